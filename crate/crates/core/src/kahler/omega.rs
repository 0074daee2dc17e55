//! Genuine Kähler differentials `Ω = I / I^{>1}` for `I = ker(R □_S R → R)`, the universal
//! derivation, and the natural isomorphism `Der_S(R, M) ≅ Hom_R(Ω, M)`.

use super::derivation::{derivation_space, is_genuine_derivation, Algebra, DerivationSpace};
use crate::error::Result;
use crate::gsets::SubgroupId;
use crate::mackey::{generated_spans, module_hom_space, quotient, GreenModule, HomSpace, MackeyHom};
use crate::poly::{simplex_points, to_ints};
use crate::report::Report;
use crate::tambara::{box_ring, kernel_ideal, Bilinear, BoxRing, NonUnitalTambara, TambaraHom};
use crate::zmod::{add_vec, sub_vec, unit_vec, Int, Matrix};

/// `R □_S R` with its multiplication map and kernel ideal `I`.
#[derive(Clone, Debug)]
pub struct MultiplicationKernel {
    pub boxring: BoxRing,
    pub multiplication: TambaraHom,
    pub ideal: NonUnitalTambara,
}

pub fn multiplication_kernel(alg: &Algebra) -> Result<MultiplicationKernel> {
    let phi = &alg.structure.mackey;
    let boxring = box_ring(&alg.ring, &alg.ring, Some((&alg.base, phi, phi)))?;
    let multiplication = boxring.multiplication();
    let ideal = kernel_ideal(&multiplication)?;
    Ok(MultiplicationKernel { boxring, multiplication, ideal })
}

/// `I^{>1}` as spans in the coordinates of `I`.
#[derive(Clone, Debug)]
pub struct Decomposables {
    pub spans: Vec<Matrix>,
    /// The sub-Mackey functor generated by products and proper norms alone.
    pub literal: Vec<Matrix>,
    /// Whether closing under the `R`-action enlarged the literal span.
    pub action_closure_added: bool,
}

impl MultiplicationKernel {
    /// Lifts an element of `R □_S R` lying in `I` to the coordinates of `I`.
    pub fn lift(&self, h: SubgroupId, y: &[Int]) -> Option<Vec<Int>> {
        self.boxring.ring.level(h).solve_in_span(self.ideal.inclusion.map(h), y)
    }

    /// `r·x = η_L(r)·x` for `x ∈ I(H)`.
    pub fn act(&self, h: SubgroupId, r: &[Int], x: &[Int]) -> Vec<Int> {
        let b = &self.boxring.ring;
        let y = b.mul(h, &self.boxring.eta_left.apply(h, r), &self.ideal.inclusion.apply(h, x));
        self.lift(h, &y).expect("I is an ideal")
    }

    /// Products of generator pairs and norms of grid points, closed under restriction, transfer,
    /// conjugation and the `R`-action.
    pub fn decomposables(&self) -> Decomposables {
        let i = &self.ideal.functor;
        let r = &self.boxring.left;
        let g = i.group().clone();
        let n = g.num_subgroups();
        let mut gens: Vec<Vec<Vec<Int>>> = vec![Vec::new(); n];
        for h in 0..n {
            let q = i.ngens(h);
            for a in 0..q {
                for b in a..q {
                    gens[h].push(i.mul(h, &unit_vec(q, a), &unit_vec(q, b)));
                }
            }
            for k in 0..n {
                if k != h && g.is_subgroup_of(h, k) {
                    for p in simplex_points(q, g.index(h, k)) {
                        gens[k].push(i.norm(k, h, &to_ints(&p)));
                    }
                }
            }
        }
        let mats: Vec<Matrix> = (0..n).map(|h| Matrix::from_columns(i.ngens(h), &gens[h])).collect();
        let literal = generated_spans(i.mackey(), &mats);
        let mut spans = literal.clone();
        let mut added = false;
        loop {
            let mut grown = false;
            let mut next = Vec::with_capacity(n);
            for h in 0..n {
                let mut cols = spans[h].columns();
                for c in spans[h].columns() {
                    for a in 0..r.ngens(h) {
                        cols.push(self.act(h, &unit_vec(r.ngens(h), a), &c));
                    }
                }
                let m = Matrix::from_columns(i.ngens(h), &cols);
                if !i.level(h).span_contains(&spans[h], &m) {
                    grown = true;
                }
                next.push(m);
            }
            if !grown {
                break;
            }
            added = true;
            spans = generated_spans(i.mackey(), &next);
        }
        Decomposables { spans, literal, action_closure_added: added }
    }
}

/// `Ω^{1}_{R/S}` with the universal derivation.
#[derive(Clone, Debug)]
pub struct KahlerModule {
    pub algebra: Algebra,
    pub kernel: MultiplicationKernel,
    pub decomposables: Decomposables,
    pub omega: GreenModule,
    /// `I → Ω`
    pub projection: MackeyHom,
    /// Chosen preimages in `I` of the generators of `Ω`, per level.
    pub sections: Vec<Matrix>,
    /// `d: R → Ω`, `r ↦ [η_L(r) − η_R(r)]`.
    pub universal: MackeyHom,
}

pub fn kahler(alg: &Algebra) -> Result<KahlerModule> {
    let kernel = multiplication_kernel(alg)?;
    let dec = kernel.decomposables();
    let i = &kernel.ideal.functor;
    let (om, proj) = quotient(i.mackey(), &dec.spans);
    let r = &alg.ring;
    let g = r.group().clone();
    let n = g.num_subgroups();
    let sections: Vec<Matrix> = (0..n)
        .map(|h| {
            let q = om.level(h).ngens();
            let cols: Vec<Vec<Int>> = (0..q)
                .map(|j| om.level(h).solve_in_span(proj.map(h), &unit_vec(q, j)).expect("projection is surjective"))
                .collect();
            Matrix::from_columns(i.ngens(h), &cols)
        })
        .collect();
    let action: Vec<Bilinear> = (0..n)
        .map(|h| {
            let q = om.level(h).ngens();
            Bilinear::from_fn(r.ngens(h), q, q, |a, j| {
                proj.apply(h, &kernel.act(h, &unit_vec(r.ngens(h), a), &sections[h].column(j)))
            })
        })
        .collect();
    let omega = GreenModule::new(r.clone(), om.clone(), action)?;
    let br = &kernel.boxring;
    let universal_maps: Vec<Matrix> = (0..n)
        .map(|h| {
            let cols: Vec<Vec<Int>> = (0..r.ngens(h))
                .map(|a| {
                    let e = unit_vec(r.ngens(h), a);
                    let y = sub_vec(&br.eta_left.apply(h, &e), &br.eta_right.apply(h, &e));
                    proj.apply(h, &kernel.lift(h, &y).expect("η_L − η_R lands in I"))
                })
                .collect();
            Matrix::from_columns(om.level(h).ngens(), &cols)
        })
        .collect();
    let universal = MackeyHom::new(r.mackey().clone(), om, universal_maps);
    Ok(KahlerModule { algebra: alg.clone(), kernel, decomposables: dec, omega, projection: proj, sections, universal })
}

const UNIVERSAL: &str = "universal derivation generates Ω";

impl KahlerModule {
    /// `d` is a genuine derivation and its image generates `Ω` as an `R`-module.
    pub fn check(&self, grid_bound: Option<usize>) -> Report {
        let mut rep = self.omega.validate().prefixed("omega");
        rep.merge(is_genuine_derivation(&self.algebra, &self.omega, &self.universal, grid_bound));
        rep.declare("kahler.generation", UNIVERSAL);
        let spans = submodule_generated(&self.omega, &self.universal.maps);
        for (h, s) in spans.iter().enumerate() {
            let lv = self.omega.module.level(h);
            let ok = lv.span_contains(s, &Matrix::identity(lv.ngens()));
            rep.record("kahler.generation", UNIVERSAL, ok, || {
                format!("image of d does not generate Ω at {}", self.omega.group().subgroup_label(h))
            });
        }
        rep
    }

    /// `Φ_D: Ω → M`, `[L, a ⊗ b] ↦ tr_L^K(b·D(a))`, for a derivation `D: R → M`.
    pub fn hom_from_derivation(&self, m: &GreenModule, d: &MackeyHom) -> MackeyHom {
        let n = self.algebra.ring.group().num_subgroups();
        let maps = (0..n)
            .map(|k| {
                let through = &self.kernel.ideal.inclusion.maps[k] * &self.sections[k];
                Matrix::from_columns(m.module.level(k).ngens(), &phi_on_ideal(self, m, d, k, &through))
            })
            .collect();
        MackeyHom::new(self.omega.module.clone(), m.module.clone(), maps)
    }
}

/// The `R`-submodule generated by the columns of `gens[h]`.
pub fn submodule_generated(m: &GreenModule, gens: &[Matrix]) -> Vec<Matrix> {
    let n = m.group().num_subgroups();
    let mut spans = generated_spans(&m.module, gens);
    loop {
        let mut grown = false;
        let mut next = Vec::with_capacity(n);
        for h in 0..n {
            let mut cols = spans[h].columns();
            for c in spans[h].columns() {
                for a in 0..m.ring.ngens(h) {
                    cols.push(m.act(h, &unit_vec(m.ring.ngens(h), a), &c));
                }
            }
            let mat = Matrix::from_columns(m.module.level(h).ngens(), &cols);
            if !m.module.level(h).span_contains(&spans[h], &mat) {
                grown = true;
            }
            next.push(mat);
        }
        if !grown {
            return spans;
        }
        spans = generated_spans(&m.module, &next);
    }
}

const DER_HOM: &str = "derivations into M are R-module maps out of Ω";

/// The explicit isomorphism `Hom_R(Ω, M) → Der_S(R, M)`, `f ↦ f∘d`, and its inverse `D ↦ Φ_D`.
#[derive(Clone, Debug)]
pub struct DerHomBijection {
    pub derivations: DerivationSpace,
    pub homs: HomSpace,
    /// Columns: derivation coordinates of `f∘d` for each hom generator `f`.
    pub forward: Matrix,
    /// Columns: hom coordinates of `Φ_D` for each derivation generator `D`.
    pub backward: Matrix,
    pub report: Report,
}

pub fn der_hom_bijection(k: &KahlerModule, m: &GreenModule) -> Result<DerHomBijection> {
    let ders = derivation_space(&k.algebra, m)?;
    let homs = module_hom_space(&k.omega, m);
    let mut report = Report::new();
    report.declare("der_hom.groups", DER_HOM);
    report.declare("der_hom.forward", DER_HOM);
    report.declare("der_hom.backward", DER_HOM);
    report.declare("der_hom.inverse", DER_HOM);
    let (dg, hg) = (ders.group(), homs.group());
    report.record("der_hom.groups", DER_HOM, dg.invariant_factors() == hg.invariant_factors(), || {
        format!("invariant factors {:?} vs {:?}", dg.invariant_factors(), hg.invariant_factors())
    });
    let mut fwd = Vec::new();
    for f in homs.basis() {
        let d = k.universal.then(&f);
        match ders.coords_of(&d) {
            Some(c) => fwd.push(c),
            None => {
                report.record("der_hom.forward", DER_HOM, false, || "f∘d is not a derivation".into());
                fwd.push(vec![Int::from(0); dg.ngens()]);
            }
        }
    }
    let mut bwd = Vec::new();
    for d in ders.basis() {
        let phi = k.hom_from_derivation(m, &d);
        let kills = k.decomposables.spans.iter().enumerate().all(|(h, s)| {
            let through = &k.kernel.ideal.inclusion.maps[h] * s;
            let img = phi_on_ideal(k, m, &d, h, &through);
            img.iter().all(|c| m.module.level(h).is_zero_element(c))
        });
        report.record("der_hom.backward", DER_HOM, kills, || "Φ_D does not vanish on I^{>1}".into());
        match homs.coords_of(&phi) {
            Some(c) => bwd.push(c),
            None => {
                report.record("der_hom.backward", DER_HOM, false, || "Φ_D is not an R-module map".into());
                bwd.push(vec![Int::from(0); hg.ngens()]);
            }
        }
    }
    let forward = Matrix::from_columns(dg.ngens(), &fwd);
    let backward = Matrix::from_columns(hg.ngens(), &bwd);
    let fb = &forward * &backward;
    let bf = &backward * &forward;
    report.record("der_hom.inverse", DER_HOM, dg.same_map(&fb, &Matrix::identity(dg.ngens())), || {
        "D ↦ Φ_D ↦ Φ_D∘d is not the identity".into()
    });
    report.record("der_hom.inverse", DER_HOM, hg.same_map(&bf, &Matrix::identity(hg.ngens())), || {
        "f ↦ f∘d ↦ Φ_{f∘d} is not the identity".into()
    });
    Ok(DerHomBijection { derivations: ders, homs, forward, backward, report })
}

/// `Φ_D` on elements of `R □_S R` given as columns at level `h`.
fn phi_on_ideal(k: &KahlerModule, m: &GreenModule, d: &MackeyHom, h: SubgroupId, cols: &Matrix) -> Vec<Vec<Int>> {
    let br = &k.kernel.boxring;
    let r = &k.algebra.ring;
    cols.columns()
        .iter()
        .map(|y| {
            let raw = br.bx.from.apply(h, y);
            let mut out = vec![Int::from(0); m.module.level(h).ngens()];
            br.bx.for_each_term(h, &raw, |l, i, j, c| {
                let (a, b) = (unit_vec(r.ngens(l), i), unit_vec(r.ngens(l), j));
                let v = m.module.tr(h, l).mul_vec(&m.act(l, &b, &d.apply(l, &a)));
                out = add_vec(&out, &v.iter().map(|x| x * c).collect::<Vec<_>>());
            });
            out
        })
        .collect()
}

/// Closure of `ker(d)` under products and norms on the grid.
pub fn kernel_is_subtambara(alg: &Algebra, d: &MackeyHom) -> Report {
    const KER: &str = "the kernel of a derivation is a sub-Tambara functor";
    let r = &alg.ring;
    let g = r.group().clone();
    let n = g.num_subgroups();
    let (_, incl) = d.kernel();
    let mut rep = Report::new();
    rep.declare("derivation.kernel", KER);
    let in_kernel = |h: SubgroupId, x: &[Int]| d.target.level(h).is_zero_element(&d.apply(h, x));
    for h in 0..n {
        let cols = incl.maps[h].columns();
        for a in &cols {
            for b in &cols {
                rep.record("derivation.kernel", KER, in_kernel(h, &r.mul(h, a, b)), || {
                    format!("product leaves ker(d) at {}", g.subgroup_label(h))
                });
            }
        }
        for k in 0..n {
            if k == h || !g.is_subgroup_of(h, k) {
                continue;
            }
            for p in simplex_points(cols.len(), g.index(h, k)) {
                let x = incl.maps[h].mul_vec(&to_ints(&p));
                rep.record("derivation.kernel", KER, in_kernel(k, &r.norm(k, h, &x)), || {
                    format!("N_{}^{} leaves ker(d)", g.subgroup_label(h), g.subgroup_label(k))
                });
            }
        }
    }
    rep
}
