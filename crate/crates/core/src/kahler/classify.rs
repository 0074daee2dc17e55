//! Maps into a square-zero extension over `R` are exactly `ε ⋉ d` for genuine derivations `d`.

use super::derivation::{derivation_space, Algebra, DerivationSpace};
use crate::error::{Error, Result};
use crate::mackey::{hom_space, GreenModule, MackeyHom};
use crate::report::Report;
use crate::tambara::{square_zero, SquareZero, TambaraHom};
use crate::zmod::{enum_cap, Matrix};

const CLASSIFY: &str = "maps into a square-zero extension are derivations";

/// The two sides of the classification, enumerated independently, and the comparison.
#[derive(Clone, Debug)]
pub struct SquareZeroClassification {
    pub extension: SquareZero,
    pub derivations: DerivationSpace,
    /// `d`-components of every Tambara map `C → R ⋉ M` over `R` and `S`, found by filtering all Mackey maps.
    pub tambara_maps: Vec<MackeyHom>,
    /// `d ↦ ε ⋉ d`, as indices into `tambara_maps`, one per enumerated derivation.
    pub correspondence: Vec<usize>,
    pub report: Report,
}

/// `ε ⋉ d: C → R ⋉ M`.
pub fn semidirect_map(sz: &SquareZero, eps: &TambaraHom, d: &MackeyHom) -> TambaraHom {
    let n = sz.ext.group().num_subgroups();
    let maps = (0..n).map(|h| Matrix::vstack(eps.source.ngens(h), &[eps.mackey.map(h), d.map(h)])).collect();
    TambaraHom::new(eps.source.clone(), sz.ext.clone(), maps)
}

/// For `C` over `S` with augmentation `ε: C → R` and an `R`-module `M`, enumerates
/// `Hom_{S-Tamb/R}(C, R ⋉ M)` by testing every Mackey map `C → M` and compares it with
/// `Der_S(C, M)`. Requires finite hom groups.
pub fn classify_maps_into_square_zero(
    c: &Algebra,
    eps: &TambaraHom,
    m: &GreenModule,
    grid_bound: Option<usize>,
) -> Result<SquareZeroClassification> {
    let r = &eps.target;
    let sz = square_zero(r, m)?;
    let mc = m.restrict_scalars(&c.ring, &eps.mackey);
    let ders = derivation_space(c, &mc)?;
    let cap = enum_cap();
    let homs = hom_space(c.ring.mackey(), &m.module);
    if !homs.group().is_finite() {
        return Err(Error::Infinite("Mackey maps C → M form an infinite group".into()));
    }
    let phi_r = c.structure.then(eps);
    let base_side = phi_r.then(&sz.section);
    let mut tambara_maps: Vec<MackeyHom> = Vec::new();
    for coords in homs.group().elements(cap)? {
        let d = homs.hom(&coords);
        let f = semidirect_map(&sz, eps, &d);
        let over_r = f.then(&sz.augmentation).same_as(eps);
        let over_s = c.structure.then(&f).same_as(&base_side);
        if over_r && over_s && f.check(grid_bound).passed() {
            tambara_maps.push(d);
        }
    }
    let mut report = Report::new();
    report.declare("square_zero.classification", CLASSIFY);
    let elements = ders.group().elements(cap)?;
    report.record("square_zero.classification", CLASSIFY, elements.len() == tambara_maps.len(), || {
        format!("{} derivations but {} Tambara maps over R", elements.len(), tambara_maps.len())
    });
    let mut correspondence = Vec::with_capacity(elements.len());
    let mut hit = vec![false; tambara_maps.len()];
    for coords in &elements {
        let d = ders.derivation(coords);
        let f = semidirect_map(&sz, eps, &d);
        let ok = f.check(grid_bound).passed();
        report.record("square_zero.classification", CLASSIFY, ok, || {
            format!("ε ⋉ d is not a Tambara map for d = {coords:?}")
        });
        match tambara_maps.iter().position(|t| t.same_as(&d)) {
            Some(i) if !hit[i] => {
                hit[i] = true;
                correspondence.push(i);
            }
            _ => report.record("square_zero.classification", CLASSIFY, false, || {
                format!("derivation {coords:?} has no partner or a repeated one")
            }),
        }
    }
    report.record("square_zero.classification", CLASSIFY, hit.iter().all(|&b| b), || {
        "some Tambara map is not of the form ε ⋉ d".into()
    });
    Ok(SquareZeroClassification { extension: sz, derivations: ders, tambara_maps, correspondence, report })
}

/// `C` augmented to itself: the common special case `ε = id`.
pub fn classify_over_itself(
    c: &Algebra,
    m: &GreenModule,
    grid_bound: Option<usize>,
) -> Result<SquareZeroClassification> {
    let eps = TambaraHom::identity(&c.ring);
    classify_maps_into_square_zero(c, &eps, m, grid_bound)
}
