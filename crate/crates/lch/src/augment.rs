//! Augmentations and augmentation varieties.
//!
//! An augmentation of a DGA over a field is a unital chain map to the
//! ground field: it kills every generator of nonzero degree, assigns field
//! values to the degree-0 generators, and must vanish on every generator
//! differential. Points ρ of (GF(q)^*)^rank specialize a group-ring DGA to
//! one over GF(q); the augmentation variety is the set of ρ whose
//! specialization admits an augmentation, counted here exactly by brute
//! force, or described symbolically when no degree-0 generators intervene.
//!
//! Enumeration costs are bounded by explicit budgets measured in candidate
//! evaluations; exceeding a budget is a hard error, never silent sampling.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::GenId;
use crate::dga::Dga;
use crate::error::{Error, Result};
use crate::field::FiniteField;
use crate::ring::{GroupRingElem, RingSpec};

/// Default budget for brute-force searches, in candidate evaluations.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// A point of (GF(q)^*)^rank: one invertible coordinate per H₁ basis
/// element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RhoPoint {
    field: FiniteField,
    values: Vec<u64>,
}

impl RhoPoint {
    pub fn new(field: FiniteField, values: Vec<u64>) -> Result<Self> {
        for &v in &values {
            field.check(v)?;
            if v == 0 {
                return Err(Error::InvalidPoint(
                    "points must have invertible (nonzero) coordinates".into(),
                ));
            }
        }
        Ok(RhoPoint { field, values })
    }

    pub fn all_ones(field: FiniteField, rank: usize) -> Self {
        RhoPoint {
            field,
            values: vec![1; rank],
        }
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }
}

/// Evaluates every coefficient of `d` at ρ, producing a DGA over GF(q)
/// with H₁ rank 0. Because evaluation is a ring map on coefficients, the
/// result squares to zero whenever the input does.
pub fn specialize(d: &Dga, rho: &RhoPoint) -> Result<Dga> {
    d.specialized(rho.values(), rho.field())
}

/// A unital chain map to the ground field: degree-0 generators carry the
/// listed values, all other generators map to 0.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Augmentation {
    values: Vec<(GenId, u64)>,
}

impl Augmentation {
    /// Builds and checks an augmentation of `d` from an assignment on the
    /// degree-0 generators. Missing generators default to 0; extra keys,
    /// out-of-range codes, or a violated ε∘∂ = 0 are errors.
    pub fn new(d: &Dga, assignment: &BTreeMap<GenId, u64>) -> Result<Self> {
        let field = match d.spec().field() {
            Some(f) => f.clone(),
            None => {
                return Err(Error::Unsupported(
                    "augmentations need field coefficients; specialize first".into(),
                ))
            }
        };
        let zero_gens = d.degree_zero_gens();
        for (&g, &v) in assignment {
            field.check(v)?;
            if !zero_gens.contains(&g) {
                return Err(Error::NotAnAugmentation(format!(
                    "{} does not have degree 0",
                    d.algebra().generator(g).name
                )));
            }
        }
        let values = zero_gens
            .iter()
            .map(|&g| (g, assignment.get(&g).copied().unwrap_or(0)))
            .collect();
        let eps = Augmentation { values };
        eps.check(d)?;
        Ok(eps)
    }

    /// The all-zeros assignment, checked against `d`.
    pub fn trivial(d: &Dga) -> Result<Self> {
        Augmentation::new(d, &BTreeMap::new())
    }

    pub fn values(&self) -> &[(GenId, u64)] {
        &self.values
    }

    pub fn value(&self, g: GenId) -> u64 {
        self.values
            .iter()
            .find(|(h, _)| *h == g)
            .map(|&(_, v)| v)
            .unwrap_or(0)
    }

    /// ε(x): words containing a generator of nonzero degree vanish; a word
    /// of degree-0 generators contributes the product of its values times
    /// the (scalar) coefficient.
    pub fn eval(&self, d: &Dga, x: &crate::algebra::NcPoly) -> Result<u64> {
        let field = d
            .spec()
            .field()
            .ok_or_else(|| Error::Unsupported("augmentations need field coefficients".into()))?
            .clone();
        if x.algebra() != d.algebra() {
            return Err(Error::AlgebraMismatch(
                "polynomial from a different algebra".into(),
            ));
        }
        let mut acc = 0u64;
        'words: for (w, c) in x.iter_terms() {
            let mut t = c.scalar_code()?;
            for &g in w.factors() {
                if d.algebra().degree(g) != 0 {
                    continue 'words;
                }
                t = field.mul(t, self.value(g));
            }
            acc = field.add(acc, t);
        }
        Ok(acc)
    }

    /// Verifies ε(∂g) = 0 for every generator of `d`.
    pub fn check(&self, d: &Dga) -> Result<()> {
        for g in d.algebra().gen_ids() {
            let v = self.eval(d, d.diff(g))?;
            if v != 0 {
                return Err(Error::NotAnAugmentation(format!(
                    "eps(d({})) = {} is nonzero",
                    d.algebra().generator(g).name,
                    v
                )));
            }
        }
        Ok(())
    }
}

/// Differentials compiled for repeated ε-evaluation: per generator, the
/// scalar-word terms that survive ε, as (coefficient code, degree-0 slots).
struct CompiledEps {
    field: FiniteField,
    slots: Vec<GenId>,
    rows: Vec<Vec<(u64, Vec<usize>)>>,
}

impl CompiledEps {
    fn new(d: &Dga) -> Result<Self> {
        let field =
            match d.spec().field() {
                Some(f) if d.spec().h1_rank() == 0 => f.clone(),
                _ => return Err(Error::Unsupported(
                    "augmentation search needs field coefficients and H1 rank 0; specialize first"
                        .into(),
                )),
            };
        let slots = d.degree_zero_gens();
        let slot_of: BTreeMap<GenId, usize> =
            slots.iter().enumerate().map(|(i, &g)| (g, i)).collect();
        let mut rows = Vec::with_capacity(d.diffs().len());
        for dp in d.diffs() {
            let mut row = Vec::new();
            'words: for (w, c) in dp.iter_terms() {
                let mut idx = Vec::with_capacity(w.len());
                for &g in w.factors() {
                    match slot_of.get(&g) {
                        Some(&i) => idx.push(i),
                        None => continue 'words,
                    }
                }
                row.push((c.scalar_code()?, idx));
            }
            rows.push(row);
        }
        Ok(CompiledEps { field, slots, rows })
    }

    fn admits(&self, x: &[u64]) -> bool {
        self.rows.iter().all(|row| {
            let mut acc = 0;
            for (code, idx) in row {
                let mut t = *code;
                for &i in idx {
                    t = self.field.mul(t, x[i]);
                }
                acc = self.field.add(acc, t);
            }
            acc == 0
        })
    }
}

fn pow_u128(base: u64, exp: u32) -> Option<u128> {
    (base as u128).checked_pow(exp)
}

/// Exhaustively lists the augmentations of a GF(q)-coefficient DGA with
/// H₁ rank 0, trying all q^{#degree-0 generators} assignments. The search
/// size must not exceed `budget`.
pub fn enumerate_augmentations(d: &Dga, budget: u64) -> Result<Vec<Augmentation>> {
    let eps = CompiledEps::new(d)?;
    let q = eps.field.q();
    let m = eps.slots.len();
    let needed = pow_u128(q, m as u32).ok_or(Error::BudgetExceeded {
        needed: u128::MAX,
        budget: budget as u128,
    })?;
    if needed > budget as u128 {
        return Err(Error::BudgetExceeded {
            needed,
            budget: budget as u128,
        });
    }
    let mut out = Vec::new();
    let mut x = vec![0u64; m];
    loop {
        if eps.admits(&x) {
            out.push(Augmentation {
                values: eps.slots.iter().copied().zip(x.iter().copied()).collect(),
            });
        }
        let mut i = 0;
        loop {
            if i == m {
                return Ok(out);
            }
            x[i] += 1;
            if x[i] < q {
                break;
            }
            x[i] = 0;
            i += 1;
        }
    }
}

/// Integer Laurent-polynomial conditions cutting out the augmentation
/// variety, normalized and deduplicated.
#[derive(Debug, Clone)]
pub struct LaurentSystem {
    spec: Arc<RingSpec>,
    equations: Vec<GroupRingElem>,
}

impl LaurentSystem {
    pub fn spec(&self) -> &Arc<RingSpec> {
        &self.spec
    }

    pub fn equations(&self) -> &[GroupRingElem] {
        &self.equations
    }

    /// One `<polynomial> = 0` line per equation.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for e in &self.equations {
            out.push_str(&format!("{} = 0\n", e));
        }
        out
    }
}

/// Extracts the defining equations of the augmentation variety for a DGA
/// without degree-0 generators: the group-ring scalar part of ∂c for every
/// degree-1 generator c, lifted to ℤ. With degree-0 generators present the
/// variety is not cut out by coefficient conditions alone; use
/// [`augvar_count`] instead.
pub fn augvar_system(d: &Dga) -> Result<LaurentSystem> {
    if !d.degree_zero_gens().is_empty() {
        return Err(Error::Unsupported(
            "symbolic variety extraction needs a DGA without degree-0 generators; \
             augvar_count handles the general case numerically"
                .into(),
        ));
    }
    let names: Vec<&str> = d.spec().h1_names().iter().map(|s| s.as_str()).collect();
    let target = RingSpec::integral(&names)?;
    let mut equations = Vec::new();
    for g in d.algebra().gen_ids() {
        if d.algebra().degree(g) != 1 {
            continue;
        }
        let scalar_part = d.diff(g).wordlength_part(0);
        let eq = match scalar_part.coeff_of(&crate::algebra::Word::empty()) {
            Some(c) => c.lift_to_int(&target)?,
            None => continue,
        };
        if !eq.is_zero() {
            equations.push(eq);
        }
    }
    let key = |e: &GroupRingElem| -> Vec<(Vec<i64>, crate::ring::Coeff)> {
        e.iter_terms()
            .map(|(x, c)| (x.clone(), c.clone()))
            .collect()
    };
    equations.sort_by_key(key);
    equations.dedup_by_key(|e| key(e));
    Ok(LaurentSystem {
        spec: target,
        equations,
    })
}

/// True iff every equation of the system vanishes at ρ.
pub fn augvar_member(s: &LaurentSystem, rho: &RhoPoint) -> Result<bool> {
    for e in &s.equations {
        if e.eval(rho.values(), rho.field())? != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Result of [`augvar_count`]: the number of points ρ ∈ (GF(q)^*)^rank
/// whose specialization admits an augmentation, with the points themselves
/// on request (sorted by coordinates).
#[derive(Debug, Clone)]
pub struct AugVarCount {
    pub count: u64,
    pub points: Option<Vec<RhoPoint>>,
}

/// Counts the augmentation variety's GF(q) points by iterating every
/// ρ ∈ (GF(q)^*)^rank and running [`enumerate_augmentations`] on the
/// specialization — no use of [`augvar_system`], so the two sides check
/// each other. The total (q−1)^rank · q^{#degree-0 generators} candidate
/// evaluations must not exceed `budget`.
pub fn augvar_count(d: &Dga, q: u64, with_points: bool, budget: u64) -> Result<AugVarCount> {
    let field = FiniteField::new(q)?;
    let rank = d.spec().h1_rank();
    let m = d.degree_zero_gens().len();
    let needed = pow_u128(q - 1, rank as u32)
        .zip(pow_u128(q, m as u32))
        .and_then(|(a, b)| a.checked_mul(b))
        .ok_or(Error::BudgetExceeded {
            needed: u128::MAX,
            budget: budget as u128,
        })?;
    if needed > budget as u128 {
        return Err(Error::BudgetExceeded {
            needed,
            budget: budget as u128,
        });
    }

    let mut count = 0;
    let mut points = with_points.then(Vec::new);
    let mut rho = vec![1u64; rank];
    loop {
        let point = RhoPoint::new(field.clone(), rho.clone())?;
        let spec_d = specialize(d, &point)?;
        if !enumerate_augmentations(&spec_d, budget)?.is_empty() {
            count += 1;
            if let Some(ps) = points.as_mut() {
                ps.push(point);
            }
        }
        let mut i = 0;
        loop {
            if i == rank {
                if let Some(ps) = points.as_mut() {
                    ps.sort_by(|a, b| a.values.cmp(&b.values));
                }
                return Ok(AugVarCount { count, points });
            }
            rho[i] += 1;
            if rho[i] < q {
                break;
            }
            rho[i] = 1;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn specialization_examples() {
        let f3 = FiniteField::new(3).unwrap();
        // L_{1,0} at (Zμ, Zλ) = (1, 2): ∂c₁ = 1 + 2 = 0 over 𝔽₃.
        let d = fixtures::lgk(1, 0, 0).unwrap();
        let rho = RhoPoint::new(f3.clone(), vec![1, 2]).unwrap();
        let s = specialize(&d, &rho).unwrap();
        assert!(s.diff(s.algebra().gen_id("c1").unwrap()).is_zero());
        assert!(s.verify().unwrap().passed());
        // L_{1,1} at (Zμ, Zλ) = (1, 1): ∂c₁ = 1 + 1 + 1 = 0 over 𝔽₃.
        let d = fixtures::lgk(1, 1, 0).unwrap();
        let rho = RhoPoint::new(f3, vec![1, 1]).unwrap();
        let s = specialize(&d, &rho).unwrap();
        assert!(s.diff(s.algebra().gen_id("c1").unwrap()).is_zero());

        let bad = RhoPoint::new(FiniteField::new(3).unwrap(), vec![0, 1]);
        assert!(matches!(bad, Err(Error::InvalidPoint(_))));
    }

    #[test]
    fn f2_dichotomy_for_surfaces() {
        // Over 𝔽₂ the surface DGA has an augmentation iff no handle is
        // knotted: each standard equation becomes 1 + 1 = 0, each knotted
        // one 1 + 1 + 1 = 1.
        let f2 = FiniteField::new(2).unwrap();
        for g in 1..=3 {
            for k in 0..=g {
                let d = fixtures::lgk(g, k, 0).unwrap();
                let rho = RhoPoint::all_ones(f2.clone(), 2 * g as usize);
                let s = specialize(&d, &rho).unwrap();
                let augs = enumerate_augmentations(&s, DEFAULT_BUDGET).unwrap();
                assert_eq!(augs.len(), usize::from(k == 0), "g={} k={}", g, k);
            }
        }
    }

    #[test]
    fn stabilization_in_degree_zero_frees_one_value() {
        let f3 = FiniteField::new(3).unwrap();
        let d = fixtures::lgk(1, 0, 0).unwrap();
        let rho = RhoPoint::new(f3, vec![1, 2]).unwrap();
        let s = specialize(&d, &rho).unwrap();
        assert_eq!(enumerate_augmentations(&s, 1000).unwrap().len(), 1);
        // Adding a canceling pair in degree 0 leaves ε(a) unconstrained
        // (∂a = b has degree −1, so ε(b) = 0 regardless).
        let st = s.stabilize(0, ("sa", "sb")).unwrap();
        let augs = enumerate_augmentations(&st, 1000).unwrap();
        assert_eq!(augs.len(), 3);
        for a in &augs {
            a.check(&st).unwrap();
        }
    }

    #[test]
    fn augmentations_multiply_values_along_words() {
        // ∂u = 1 + z·z over 𝔽₃ forces ε(z)² = −1 = 2, which has no root
        // in 𝔽₃ but two roots (±2) in 𝔽₅.
        use crate::algebra::{FreeAlgebra, Generator, NcPoly};
        for (q, expected) in [(3u64, 0usize), (5, 2)] {
            let spec = RingSpec::new(q, vec![]).unwrap();
            let alg = FreeAlgebra::new(
                spec.clone(),
                vec![Generator::new("z", 0), Generator::new("u", 1)],
            )
            .unwrap();
            let z = NcPoly::generator(&alg, alg.gen_id("z").unwrap());
            let du = NcPoly::one(&alg).add(&z.mul(&z).unwrap()).unwrap();
            let d = Dga::new(alg.clone(), vec![NcPoly::zero(&alg), du]).unwrap();
            let augs = enumerate_augmentations(&d, 1000).unwrap();
            assert_eq!(augs.len(), expected, "q={}", q);
            for a in &augs {
                a.check(&d).unwrap();
                let z_id = alg.gen_id("z").unwrap();
                let sq = d.spec().field().unwrap().mul(a.value(z_id), a.value(z_id));
                assert_eq!(sq, q - 1);
            }
        }
    }

    #[test]
    fn budget_is_a_hard_error() {
        let spec = RingSpec::new(5, vec![]).unwrap();
        use crate::algebra::{FreeAlgebra, Generator, NcPoly};
        let gens: Vec<_> = (0..6)
            .map(|i| Generator::new(&format!("z{}", i), 0))
            .collect();
        let alg = FreeAlgebra::new(spec, gens).unwrap();
        let diff = vec![NcPoly::zero(&alg); 6];
        let d = Dga::new(alg, diff).unwrap();
        // 5^6 = 15625 candidates.
        match enumerate_augmentations(&d, 10_000) {
            Err(Error::BudgetExceeded { needed, budget }) => {
                assert_eq!(needed, 15_625);
                assert_eq!(budget, 10_000);
            }
            other => panic!("expected budget error, got {:?}", other.map(|v| v.len())),
        }
        assert_eq!(
            enumerate_augmentations(&d, 20_000).unwrap().len(),
            15_625,
            "zero differential admits every assignment"
        );
    }

    #[test]
    fn system_matches_the_handle_equations() {
        let s = augvar_system(&fixtures::lgk(2, 1, 0).unwrap()).unwrap();
        assert_eq!(
            s.render(),
            "1 + lambda2 = 0\n1 + lambda1 + mu1*lambda1 = 0\n"
        );
        // Zero differential → empty system.
        let empty = augvar_system(&fixtures::fiber_link(2, 0).unwrap()).unwrap();
        assert!(empty.equations().is_empty());
        assert_eq!(empty.render(), "");
        // No degree-1 generators → empty system.
        let sphere = augvar_system(&fixtures::std_sphere(0).unwrap()).unwrap();
        assert!(sphere.equations().is_empty());
    }

    #[test]
    fn system_deduplicates_repeated_equations() {
        // L_{2,0} has ∂c₁ = 1 + λ₁ and ∂c₂ = 1 + λ₂: distinct equations.
        let s = augvar_system(&fixtures::lgk(2, 0, 0).unwrap()).unwrap();
        assert_eq!(s.equations().len(), 2);
        // A DGA with two generators sharing one equation keeps one copy.
        use crate::algebra::{FreeAlgebra, Generator, NcPoly};
        let spec = RingSpec::integral(&["t"]).unwrap();
        let alg = FreeAlgebra::new(
            spec.clone(),
            vec![Generator::new("x", 1), Generator::new("y", 1)],
        )
        .unwrap();
        let eq = GroupRingElem::one(&spec)
            .add(&GroupRingElem::monomial(&spec, &[1]).unwrap())
            .unwrap();
        let p = NcPoly::scalar(&alg, eq).unwrap();
        let d = Dga::new(alg, vec![p.clone(), p]).unwrap();
        assert_eq!(augvar_system(&d).unwrap().equations().len(), 1);
    }

    #[test]
    fn system_rejects_degree_zero_generators() {
        use crate::algebra::{FreeAlgebra, Generator, NcPoly};
        let spec = RingSpec::integral(&[]).unwrap();
        let alg = FreeAlgebra::new(spec, vec![Generator::new("z", 0)]).unwrap();
        let d = Dga::new(alg.clone(), vec![NcPoly::zero(&alg)]).unwrap();
        assert!(matches!(augvar_system(&d), Err(Error::Unsupported(_))));
    }

    #[test]
    fn membership_examples() {
        let f3 = FiniteField::new(3).unwrap();
        let s10 = augvar_system(&fixtures::lgk(1, 0, 0).unwrap()).unwrap();
        let rho = RhoPoint::new(f3.clone(), vec![1, 2]).unwrap();
        assert!(augvar_member(&s10, &rho).unwrap());
        let rho = RhoPoint::new(f3.clone(), vec![1, 1]).unwrap();
        assert!(!augvar_member(&s10, &rho).unwrap());

        let s11 = augvar_system(&fixtures::lgk(1, 1, 0).unwrap()).unwrap();
        // (Zμ, Zλ) = (1, 2): 1 + 2 + 2·1 = 5 ≡ 2 ≠ 0.
        let rho = RhoPoint::new(f3.clone(), vec![1, 2]).unwrap();
        assert!(!augvar_member(&s11, &rho).unwrap());
        // (Zμ, Zλ) = (1, 1): 1 + 1 + 1 ≡ 0.
        let rho = RhoPoint::new(f3, vec![1, 1]).unwrap();
        assert!(augvar_member(&s11, &rho).unwrap());
    }

    #[test]
    fn counts_match_the_closed_form() {
        // Standard handles contribute q−1 points, knotted handles q−2.
        let expected = |g: u32, k: u32, q: u64| (q - 1).pow(g - k) * (q - 2).pow(k);
        for q in [3u64, 4, 5] {
            for g in 1..=2 {
                for k in 0..=g {
                    let d = fixtures::lgk(g, k, 0).unwrap();
                    let got = augvar_count(&d, q, false, DEFAULT_BUDGET).unwrap();
                    assert_eq!(got.count, expected(g, k, q), "g={} k={} q={}", g, k, q);
                }
            }
        }
        assert_eq!(
            augvar_count(&fixtures::lgk(1, 0, 0).unwrap(), 3, false, 1000)
                .unwrap()
                .count,
            2
        );
        assert_eq!(
            augvar_count(&fixtures::lgk(1, 1, 0).unwrap(), 3, false, 1000)
                .unwrap()
                .count,
            1
        );
        assert_eq!(
            augvar_count(&fixtures::lgk(2, 1, 0).unwrap(), 3, false, 1000)
                .unwrap()
                .count,
            2
        );
    }

    #[test]
    fn count_agrees_with_membership_over_the_system() {
        for q in [2u64, 3, 4, 5, 7] {
            let field = FiniteField::new(q).unwrap();
            for (g, k) in [(1u32, 0u32), (1, 1), (2, 1)] {
                let d = fixtures::lgk(g, k, 0).unwrap();
                let s = augvar_system(&d).unwrap();
                let rank = d.spec().h1_rank();
                let mut member_count = 0u64;
                let mut rho = vec![1u64; rank];
                'outer: loop {
                    let p = RhoPoint::new(field.clone(), rho.clone()).unwrap();
                    if augvar_member(&s, &p).unwrap() {
                        member_count += 1;
                    }
                    let mut i = 0;
                    loop {
                        if i == rank {
                            break 'outer;
                        }
                        rho[i] += 1;
                        if rho[i] < q {
                            break;
                        }
                        rho[i] = 1;
                        i += 1;
                    }
                }
                let counted = augvar_count(&d, q, false, DEFAULT_BUDGET).unwrap().count;
                assert_eq!(member_count, counted, "g={} k={} q={}", g, k, q);
            }
        }
    }

    #[test]
    fn count_returns_sorted_points_on_request() {
        let d = fixtures::lgk(1, 0, 0).unwrap();
        let got = augvar_count(&d, 3, true, 1000).unwrap();
        let points = got.points.unwrap();
        assert_eq!(points.len(), got.count as usize);
        // Zλ = 2 forced, Zμ free.
        let coords: Vec<_> = points.iter().map(|p| p.values().to_vec()).collect();
        assert_eq!(coords, vec![vec![1, 2], vec![2, 2]]);
    }

    #[test]
    fn count_is_invariant_under_elementary_autos() {
        let d = fixtures::lgk(1, 1, 0).unwrap();
        let c1 = d.algebra().gen_id("c1").unwrap();
        let lam = GroupRingElem::monomial(d.spec(), &[0, 1]).unwrap();
        let (d2, _) = d
            .elementary_auto(c1, &lam, &crate::algebra::NcPoly::zero(d.algebra()))
            .unwrap();
        for q in [3u64, 5] {
            assert_eq!(
                augvar_count(&d, q, false, DEFAULT_BUDGET).unwrap().count,
                augvar_count(&d2, q, false, DEFAULT_BUDGET).unwrap().count
            );
        }
    }
}
