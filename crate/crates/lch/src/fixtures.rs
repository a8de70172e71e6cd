//! Built-in DGAs with their gradings, H₁ bases, and differentials.
//!
//! Coefficients are selected by `order`: 0 for ℤ[H₁], otherwise a prime
//! power q for GF(q)[H₁]. Every constructor verifies the result before
//! returning it.
//!
//! For the genus-g surfaces the H₁ basis is ordered per handle,
//! (μ₁, λ₁, …, μ_g, λ_g), and the knotted handles come first: handle i is
//! knotted exactly when i ≤ k.

use std::sync::Arc;

use crate::algebra::{FreeAlgebra, Generator, NcPoly};
use crate::dga::Dga;
use crate::error::{Error, Result};
use crate::grading::CappingRecord;
use crate::ring::{GroupRingElem, RingSpec};

fn verified(dga: Dga) -> Result<Dga> {
    let report = dga.verify()?;
    match report.failure {
        None => Ok(dga),
        Some(f) => Err(Error::VerifyFailed(f.message)),
    }
}

fn surface_spec(g: u32, order: u64) -> Result<Arc<RingSpec>> {
    let mut names = Vec::with_capacity(2 * g as usize);
    for i in 1..=g {
        names.push(format!("mu{}", i));
        names.push(format!("lambda{}", i));
    }
    RingSpec::new(order, names)
}

/// The surface of genus g with the first k handles knotted: generators
/// c (degree 2, ∂c = 0) and c₁…c_g (degree 1), with
/// ∂cᵢ = 1 + λᵢ + μᵢλᵢ for knotted handles and 1 + λᵢ for standard ones.
pub fn lgk(g: u32, k: u32, order: u64) -> Result<Dga> {
    lgk_signed(g, k, order, &vec![(1, 1); g as usize])
}

/// [`lgk`] with a sign choice per handle: `signs[i] = (s_λ, s_μλ)` flips
/// the non-constant terms of ∂cᵢ₊₁ (the second entry is unused on standard
/// handles). All entries must be ±1; all-plus reproduces [`lgk`].
pub fn lgk_signed(g: u32, k: u32, order: u64, signs: &[(i8, i8)]) -> Result<Dga> {
    if g < 1 {
        return Err(Error::InvalidRing("genus must be at least 1".into()));
    }
    if k > g {
        return Err(Error::InvalidRing(format!(
            "knotted handle count {} exceeds genus {}",
            k, g
        )));
    }
    if signs.len() != g as usize {
        return Err(Error::InvalidRing(format!(
            "{} sign pairs for genus {}",
            signs.len(),
            g
        )));
    }
    if signs.iter().any(|&(a, b)| a.abs() != 1 || b.abs() != 1) {
        return Err(Error::InvalidRing("signs must be +1 or -1".into()));
    }
    let spec = surface_spec(g, order)?;
    let mut gens = vec![Generator::new("c", 2)];
    for i in 1..=g {
        gens.push(Generator::new(&format!("c{}", i), 1));
    }
    let algebra = FreeAlgebra::new(spec.clone(), gens)?;

    let signed = |exps: &[i64], sign: i8| -> Result<GroupRingElem> {
        let m = GroupRingElem::monomial(&spec, exps)?;
        Ok(if sign < 0 { m.neg() } else { m })
    };
    let mut diff = vec![NcPoly::zero(&algebra)];
    for i in 1..=g as usize {
        let mut exps = vec![0i64; 2 * g as usize];
        let (s_lam, s_mulam) = signs[i - 1];
        exps[2 * i - 1] = 1; // λᵢ
        let mut dci = GroupRingElem::one(&spec).add(&signed(&exps, s_lam)?)?;
        if i <= k as usize {
            exps[2 * i - 2] = 1; // μᵢλᵢ
            dci = dci.add(&signed(&exps, s_mulam)?)?;
        }
        diff.push(NcPoly::scalar(&algebra, dci)?);
    }
    verified(Dga::new(algebra, diff)?)
}

/// Capping data behind the [`lgk`] degrees: the sphere maximum over one
/// down cusp, each saddle over one down cusp.
pub fn lgk_capping_records(g: u32) -> Result<Vec<(String, CappingRecord)>> {
    if g < 1 {
        return Err(Error::InvalidRing("genus must be at least 1".into()));
    }
    let mut out = vec![("c".to_string(), CappingRecord::new(1, 0, 2)?)];
    for i in 1..=g {
        out.push((format!("c{}", i), CappingRecord::new(1, 0, 1)?));
    }
    Ok(out)
}

/// The link of the 2k-fold cyclic branched cover fiber with its unknotted
/// fiber: mixed chords b₁, a₁, …, b_k, a_k with |bᵢ| = 2i − 1 and
/// |aᵢ| = 2i, zero differential, trivial H₁ contribution.
pub fn fiber_link(k: u32, order: u64) -> Result<Dga> {
    if k < 1 {
        return Err(Error::InvalidRing(
            "fiber parameter must be at least 1".into(),
        ));
    }
    let spec = RingSpec::new(order, Vec::new())?;
    let mut gens = Vec::with_capacity(2 * k as usize);
    for i in 1..=i64::from(k) {
        gens.push(Generator::mixed(&format!("b{}", i), 2 * i - 1));
        gens.push(Generator::mixed(&format!("a{}", i), 2 * i));
    }
    let algebra = FreeAlgebra::new(spec, gens)?;
    let diff = vec![NcPoly::zero(&algebra); 2 * k as usize];
    verified(Dga::new(algebra, diff)?)
}

/// Capping data behind the [`fiber_link`] degrees: each chord sits over a
/// maximum, with 2(i − 1) down cusps for bᵢ and 2i − 1 for aᵢ.
pub fn fiber_link_capping_records(k: u32) -> Result<Vec<(String, CappingRecord)>> {
    if k < 1 {
        return Err(Error::InvalidRing(
            "fiber parameter must be at least 1".into(),
        ));
    }
    let mut out = Vec::new();
    for i in 1..=k {
        out.push((format!("b{}", i), CappingRecord::new(2 * (i - 1), 0, 2)?));
        out.push((format!("a{}", i), CappingRecord::new(2 * i - 1, 0, 2)?));
    }
    Ok(out)
}

/// The link of a knotted sphere with an unknotted sphere: pure chord c of
/// degree 2 plus mixed chords a (degree 2) and b (degree 1), zero
/// differential.
pub fn knot_sphere_link(order: u64) -> Result<Dga> {
    let spec = RingSpec::new(order, Vec::new())?;
    let algebra = FreeAlgebra::new(
        spec,
        vec![
            Generator::new("c", 2),
            Generator::mixed("a", 2),
            Generator::mixed("b", 1),
        ],
    )?;
    let diff = vec![NcPoly::zero(&algebra); 3];
    verified(Dga::new(algebra, diff)?)
}

pub fn knot_sphere_capping_records() -> Result<Vec<(String, CappingRecord)>> {
    Ok(vec![
        ("c".to_string(), CappingRecord::new(1, 0, 2)?),
        ("a".to_string(), CappingRecord::new(1, 0, 2)?),
        ("b".to_string(), CappingRecord::new(0, 0, 2)?),
    ])
}

/// The standard sphere: one pure chord c of degree 2, ∂c = 0.
pub fn std_sphere(order: u64) -> Result<Dga> {
    let spec = RingSpec::new(order, Vec::new())?;
    let algebra = FreeAlgebra::new(spec, vec![Generator::new("c", 2)])?;
    let diff = vec![NcPoly::zero(&algebra)];
    verified(Dga::new(algebra, diff)?)
}

pub fn std_sphere_capping_records() -> Result<Vec<(String, CappingRecord)>> {
    Ok(vec![("c".to_string(), CappingRecord::new(1, 0, 2)?)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ChordClass;
    use crate::grading::chord_degree;

    #[test]
    fn surface_differentials_match_the_handle_type() {
        let d = lgk(2, 1, 0).unwrap();
        let alg = d.algebra();
        assert_eq!(d.spec().h1_rank(), 4);
        assert_eq!(d.spec().h1_names(), ["mu1", "lambda1", "mu2", "lambda2"]);
        assert!(d.diff(alg.gen_id("c").unwrap()).is_zero());
        assert_eq!(
            d.diff(alg.gen_id("c1").unwrap()).to_string(),
            "1 + lambda1 + mu1*lambda1"
        );
        assert_eq!(d.diff(alg.gen_id("c2").unwrap()).to_string(), "1 + lambda2");

        let torus = lgk(1, 0, 0).unwrap();
        assert_eq!(
            torus
                .diff(torus.algebra().gen_id("c1").unwrap())
                .to_string(),
            "1 + lambda1"
        );
        let knotted = lgk(1, 1, 0).unwrap();
        assert_eq!(
            knotted
                .diff(knotted.algebra().gen_id("c1").unwrap())
                .to_string(),
            "1 + lambda1 + mu1*lambda1"
        );
    }

    #[test]
    fn surface_bounds_are_enforced() {
        assert!(lgk(0, 0, 0).is_err());
        assert!(lgk(2, 3, 0).is_err());
        assert!(lgk_signed(1, 0, 0, &[]).is_err());
        assert!(lgk_signed(1, 0, 0, &[(2, 1)]).is_err());
        assert!(lgk(1, 0, 6).is_err(), "6 is not a prime power");
    }

    #[test]
    fn signed_variant_flips_individual_terms() {
        let d = lgk_signed(1, 1, 0, &[(-1, 1)]).unwrap();
        assert_eq!(
            d.diff(d.algebra().gen_id("c1").unwrap()).to_string(),
            "1 - lambda1 + mu1*lambda1"
        );
        assert!(d.verify().unwrap().passed());
        // Over GF(2) the sign disappears.
        let e = lgk_signed(1, 1, 2, &[(-1, 1)]).unwrap();
        assert_eq!(
            e.diff(e.algebra().gen_id("c1").unwrap()).to_string(),
            "1 + lambda1 + mu1*lambda1"
        );
    }

    #[test]
    fn every_fixture_verifies_over_small_characteristics() {
        for &order in &[0u64, 2, 3, 5] {
            for g in 1..=4 {
                for k in 0..=g {
                    let d = lgk(g, k, order).unwrap();
                    assert!(d.verify().unwrap().passed());
                    assert!(!d.is_good(), "surface differentials have scalar parts");
                }
            }
            for k in 1..=5 {
                let d = fiber_link(k, order).unwrap();
                assert!(d.verify().unwrap().passed());
                assert!(d.is_good());
            }
            assert!(knot_sphere_link(order).unwrap().is_good());
            assert!(std_sphere(order).unwrap().is_good());
        }
    }

    #[test]
    fn fiber_link_degrees_and_classes() {
        let d = fiber_link(3, 0).unwrap();
        let alg = d.algebra();
        for i in 1..=3i64 {
            let b = alg.gen_id(&format!("b{}", i)).unwrap();
            let a = alg.gen_id(&format!("a{}", i)).unwrap();
            assert_eq!(alg.degree(b), 2 * i - 1);
            assert_eq!(alg.degree(a), 2 * i);
            assert!(alg.generator(b).chord.is_mixed());
            assert!(alg.generator(a).chord.is_mixed());
        }
        assert_eq!(d.spec().h1_rank(), 0);
    }

    #[test]
    fn knot_sphere_link_shape() {
        let d = knot_sphere_link(2).unwrap();
        let alg = d.algebra();
        assert_eq!(
            alg.generator(alg.gen_id("c").unwrap()).chord,
            ChordClass::Pure
        );
        assert!(alg.generator(alg.gen_id("a").unwrap()).chord.is_mixed());
        assert_eq!(alg.degree(alg.gen_id("a").unwrap()), 2);
        assert_eq!(alg.degree(alg.gen_id("b").unwrap()), 1);
    }

    #[test]
    fn capping_records_reproduce_every_degree() {
        for (fixture, records) in [
            (lgk(3, 1, 0).unwrap(), lgk_capping_records(3).unwrap()),
            (
                fiber_link(4, 0).unwrap(),
                fiber_link_capping_records(4).unwrap(),
            ),
            (
                knot_sphere_link(0).unwrap(),
                knot_sphere_capping_records().unwrap(),
            ),
            (
                std_sphere(0).unwrap(),
                std_sphere_capping_records().unwrap(),
            ),
        ] {
            let alg = fixture.algebra();
            assert_eq!(records.len(), alg.gens().len());
            for (name, rec) in &records {
                let g = alg.gen_id(name).unwrap();
                assert_eq!(chord_degree(rec), alg.degree(g), "degree of {}", name);
            }
        }
    }
}
