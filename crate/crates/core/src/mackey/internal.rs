//! `R`-module maps between Green modules and the internal hom Mackey functor.

use std::sync::Arc;

use super::{add_mackey_hom_constraints, GreenModule, HomSpace, MackeyFunctor, MatrixUnknowns};
use crate::error::Result;
use crate::tambara::coinduced_family;
use crate::zmod::{unit_vec, LinearSystem};

/// `Hom_R(M, N)` for modules over the same ring.
pub fn module_hom_space(m: &GreenModule, n: &GreenModule) -> HomSpace {
    let g = m.group().clone();
    let ns = g.num_subgroups();
    let shapes = (0..ns).map(|h| (n.module.level(h).ngens(), m.module.level(h).ngens())).collect();
    let u = MatrixUnknowns::new(shapes);
    let mut sys = LinearSystem::new(u.total);
    add_mackey_hom_constraints(&mut sys, &u, &m.module, &n.module);
    for h in 0..ns {
        let q = m.module.level(h).ngens();
        for a in 0..m.ring.ngens(h) {
            let r = unit_vec(m.ring.ngens(h), a);
            for j in 0..q {
                let e = unit_vec(q, j);
                let c = &u.times_vector(h, &m.act(h, &r, &e)) - &u.left_times_vector(&n.act_matrix(h, &r), h, &e);
                sys.constrain(c, n.module.level(h));
            }
        }
    }
    HomSpace { source: m.module.clone(), target: n.module.clone(), unknowns: u, solutions: sys.solve() }
}

/// `\underline{Hom}_R(M, N)`: level `H` is `Hom_R(M, N_{G/H}) ≅ Hom_{i_H^*R}(i_H^*M, i_H^*N)`, with
/// restrictions, transfers and conjugations induced by the maps between the `N_{G/H}`.
#[derive(Clone, Debug)]
pub struct InternalHom {
    pub functor: Arc<MackeyFunctor>,
    pub spaces: Vec<HomSpace>,
}

pub fn internal_hom_module(m: &GreenModule, n: &GreenModule) -> Result<InternalHom> {
    let fam = coinduced_family(n)?;
    let spaces: Vec<HomSpace> = fam.modules.iter().map(|nh| module_hom_space(m, nh)).collect();
    let levels = spaces.iter().map(|s| s.group().clone()).collect();
    let basis: Vec<_> = spaces.iter().map(|s| s.basis()).collect();
    let functor = fam.assemble(levels, &basis, |h, f| spaces[h].coords_of(f))?;
    Ok(InternalHom { functor: Arc::new(functor), spaces })
}
