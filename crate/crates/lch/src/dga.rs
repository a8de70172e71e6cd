//! Semifree differential graded algebras over Λ[H₁] and their moves.
//!
//! A [`Dga`] is a free algebra together with one differential polynomial per
//! generator. The differential extends to the whole algebra by the signed
//! Leibniz rule; [`Dga::verify`] checks the two defining conditions (degree
//! −1 and ∂² = 0). Stabilization and elementary automorphisms implement the
//! generating moves of stable tame isomorphism.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::{FreeAlgebra, GenId, Generator, NcPoly, Word};
use crate::error::{Error, Result};
use crate::field::FiniteField;
use crate::matrix::FMatrix;
use crate::ring::{GroupRingElem, RingSpec};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dga {
    algebra: Arc<FreeAlgebra>,
    diff: Vec<NcPoly>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenCheck {
    pub name: String,
    pub degree_ok: bool,
    pub d_squared_zero: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyFailure {
    pub generator: String,
    pub message: String,
}

/// Outcome of [`Dga::verify`]: one line per generator plus the first
/// failure, with the offending residual rendered in the message.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub checks: Vec<GenCheck>,
    pub failure: Option<VerifyFailure>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// The forward map of an elementary automorphism: the identity on every
/// generator except `target`, which maps to `image` = unit·target + tail.
#[derive(Debug, Clone)]
pub struct ElementaryAuto {
    target: GenId,
    image: NcPoly,
}

impl ElementaryAuto {
    pub fn target(&self) -> GenId {
        self.target
    }

    pub fn image(&self) -> &NcPoly {
        &self.image
    }

    pub fn apply(&self, x: &NcPoly) -> Result<NcPoly> {
        let mut map = BTreeMap::new();
        map.insert(self.target, self.image.clone());
        x.substitute(&map)
    }
}

impl Dga {
    /// Builds a DGA candidate; no verification beyond arity and context
    /// checks, so unverified differentials can be constructed and examined.
    pub fn new(algebra: Arc<FreeAlgebra>, diff: Vec<NcPoly>) -> Result<Self> {
        if diff.len() != algebra.gens().len() {
            return Err(Error::AlgebraMismatch(format!(
                "{} differentials for {} generators",
                diff.len(),
                algebra.gens().len()
            )));
        }
        for d in &diff {
            if !Arc::ptr_eq(d.algebra(), &algebra) && **d.algebra() != *algebra {
                return Err(Error::AlgebraMismatch(
                    "differential polynomial from a different algebra".into(),
                ));
            }
        }
        Ok(Dga { algebra, diff })
    }

    pub fn algebra(&self) -> &Arc<FreeAlgebra> {
        &self.algebra
    }

    pub fn spec(&self) -> &Arc<RingSpec> {
        self.algebra.spec()
    }

    pub fn diff(&self, g: GenId) -> &NcPoly {
        &self.diff[g.index()]
    }

    pub fn diffs(&self) -> &[NcPoly] {
        &self.diff
    }

    pub fn degree_zero_gens(&self) -> Vec<GenId> {
        self.algebra
            .gen_ids()
            .filter(|&g| self.algebra.degree(g) == 0)
            .collect()
    }

    /// Extends the generator differentials to an arbitrary polynomial by the
    /// signed Leibniz rule: on a word g₁…gₙ,
    /// ∂(g₁…gₙ) = Σᵢ (−1)^{|g₁…gᵢ₋₁|} g₁…gᵢ₋₁ · ∂(gᵢ) · gᵢ₊₁…gₙ,
    /// extended Λ[H₁]-linearly.
    pub fn differentiate(&self, x: &NcPoly) -> Result<NcPoly> {
        if !Arc::ptr_eq(x.algebra(), &self.algebra) && **x.algebra() != *self.algebra {
            return Err(Error::AlgebraMismatch(
                "polynomial from a different algebra".into(),
            ));
        }
        let one = GroupRingElem::one(self.spec());
        let mut out = NcPoly::zero(&self.algebra);
        for (w, coeff) in x.iter_terms() {
            let factors = w.factors();
            let mut prefix_degree: i64 = 0;
            for (i, &g) in factors.iter().enumerate() {
                let signed = if prefix_degree.rem_euclid(2) == 0 {
                    coeff.clone()
                } else {
                    coeff.neg()
                };
                let prefix =
                    NcPoly::term(&self.algebra, signed, Word::from_ids(factors[..i].to_vec()))?;
                let suffix = NcPoly::term(
                    &self.algebra,
                    one.clone(),
                    Word::from_ids(factors[i + 1..].to_vec()),
                )?;
                let piece = prefix.mul(self.diff(g))?.mul(&suffix)?;
                out = out.add(&piece)?;
                prefix_degree += self.algebra.degree(g);
            }
        }
        Ok(out)
    }

    /// Checks that every generator differential is homogeneous of degree
    /// |g| − 1 and that ∂² vanishes on every generator. Errors only on
    /// resource limits (word cap), never on a failed check.
    pub fn verify(&self) -> Result<VerifyReport> {
        let mut checks = Vec::new();
        let mut failure = None;
        for g in self.algebra.gen_ids() {
            let gen = self.algebra.generator(g);
            let dg = self.diff(g);
            let degree_ok = dg.degree().matches(gen.degree - 1);
            let residual = self.differentiate(dg)?;
            let d_squared_zero = residual.is_zero();
            if failure.is_none() && !(degree_ok && d_squared_zero) {
                let message = if !degree_ok {
                    format!(
                        "d({}) = {} is not homogeneous of degree {}",
                        gen.name,
                        dg,
                        gen.degree - 1
                    )
                } else {
                    format!("d^2({}) = {} is nonzero", gen.name, residual)
                };
                failure = Some(VerifyFailure {
                    generator: gen.name.clone(),
                    message,
                });
            }
            checks.push(GenCheck {
                name: gen.name.clone(),
                degree_ok,
                d_squared_zero,
            });
        }
        Ok(VerifyReport { checks, failure })
    }

    /// A DGA is good when no generator differential has a word-length-0
    /// (group-ring scalar) part; its length-1 part is then a differential.
    pub fn is_good(&self) -> bool {
        self.diff.iter().all(|d| d.wordlength_part(0).is_zero())
    }

    /// Adds a canceling pair: a in degree `j` and b in degree `j − 1` with
    /// ∂a = b, ∂b = 0. Existing generators and differentials are untouched.
    pub fn stabilize(&self, j: i64, names: (&str, &str)) -> Result<Dga> {
        let (name_a, name_b) = names;
        if name_a == name_b {
            return Err(Error::NameCollision(name_a.into()));
        }
        let algebra = self.algebra.extended(vec![
            Generator::new(name_a, j),
            Generator::new(name_b, j - 1),
        ])?;
        let mut diff: Vec<NcPoly> = self
            .diff
            .iter()
            .map(|d| d.rehomed(&algebra))
            .collect::<Result<_>>()?;
        let b_id = algebra.gen_id(name_b).expect("just added");
        diff.push(NcPoly::generator(&algebra, b_id));
        diff.push(NcPoly::zero(&algebra));
        Dga::new(algebra, diff)
    }

    /// Conjugates the differential by the elementary automorphism
    /// φ(target) = unit·target + tail, φ = id on other generators. `unit`
    /// must be a unit of Λ[H₁] and `tail` a polynomial of homogeneous degree
    /// |target| not mentioning `target`. Returns the new DGA (differential
    /// φ∂φ⁻¹) together with φ; the result is re-verified.
    pub fn elementary_auto(
        &self,
        target: GenId,
        unit: &GroupRingElem,
        tail: &NcPoly,
    ) -> Result<(Dga, ElementaryAuto)> {
        if target.index() >= self.algebra.gens().len() {
            return Err(Error::UnknownGenerator(format!("id {}", target.index())));
        }
        let gen = self.algebra.generator(target);
        if unit.spec() != self.spec() {
            return Err(Error::SpecMismatch(
                "unit coefficient from a different ring".into(),
            ));
        }
        if unit.as_unit().is_none() {
            return Err(Error::NotAUnit(unit.to_string()));
        }
        if tail.mentions(target) {
            return Err(Error::InvalidAuto(format!(
                "tail {} mentions the target generator {}",
                tail, gen.name
            )));
        }
        if !tail.degree().matches(gen.degree) {
            return Err(Error::DegreeMismatch(format!(
                "tail {} is not homogeneous of degree |{}| = {}",
                tail, gen.name, gen.degree
            )));
        }

        let image = NcPoly::generator(&self.algebra, target)
            .scale(unit)?
            .add(tail)?;
        let unit_inv = unit.unit_inverse()?;
        let inverse_image = NcPoly::generator(&self.algebra, target)
            .sub(tail)?
            .scale(&unit_inv)?;

        let mut forward = BTreeMap::new();
        forward.insert(target, image.clone());

        let mut diff = Vec::with_capacity(self.diff.len());
        for g in self.algebra.gen_ids() {
            let preimage_diff = if g == target {
                self.differentiate(&inverse_image)?
            } else {
                self.diff(g).clone()
            };
            diff.push(preimage_diff.substitute(&forward)?);
        }
        let out = Dga::new(self.algebra.clone(), diff)?;
        let report = out.verify()?;
        if let Some(f) = report.failure {
            return Err(Error::VerifyFailed(format!(
                "conjugated differential fails verification: {}",
                f.message
            )));
        }
        Ok((out, ElementaryAuto { target, image }))
    }

    /// Evaluates every coefficient at a point of (GF(q)^*)^rank, yielding a
    /// DGA over GF(q) with H₁ rank 0 and the same generators.
    pub(crate) fn specialized(&self, rho: &[u64], field: &FiniteField) -> Result<Dga> {
        let rank = self.spec().h1_rank();
        if rho.len() != rank {
            return Err(Error::InvalidPoint(format!(
                "point has {} coordinates, H1 rank is {}",
                rho.len(),
                rank
            )));
        }
        let new_spec = RingSpec::new(field.q(), Vec::new())?;
        let algebra = self.algebra.with_spec(new_spec.clone())?;
        let mut diff = Vec::with_capacity(self.diff.len());
        for d in &self.diff {
            let mut out = NcPoly::zero(&algebra);
            for (w, c) in d.iter_terms() {
                let code = c.eval(rho, field)?;
                if code != 0 {
                    let scalar = GroupRingElem::from_code(&new_spec, code)?;
                    out = out.add(&NcPoly::term(&algebra, scalar, w.clone())?)?;
                }
            }
            diff.push(out);
        }
        Dga::new(algebra, diff)
    }

    /// Decides whether 1 = Σᵢ xᵢ·∂(gᵢ) has a solution in scalars xᵢ over the
    /// ground field, after sending every H₁ variable to 1. This is a
    /// sufficient certificate for vanishing contact homology, not a complete
    /// decision procedure: witnesses outside the linear span of the
    /// generator differentials are not searched.
    pub fn unit_in_image_linear(&self) -> Result<bool> {
        let field = match self.spec().field() {
            Some(f) => f.clone(),
            None => {
                return Err(Error::Unsupported(
                    "unit-in-image certificate needs field coefficients; specialize first".into(),
                ))
            }
        };
        let d = if self.spec().h1_rank() > 0 {
            self.specialized(&vec![1; self.spec().h1_rank()], &field)?
        } else {
            self.clone()
        };

        let mut row_of: BTreeMap<Word, usize> = BTreeMap::new();
        row_of.insert(Word::empty(), 0);
        for dp in d.diffs() {
            for (w, _) in dp.iter_terms() {
                let next = row_of.len();
                row_of.entry(w.clone()).or_insert(next);
            }
        }
        let mut a = FMatrix::zeros(row_of.len(), d.diffs().len());
        for (col, dp) in d.diffs().iter().enumerate() {
            for (w, c) in dp.iter_terms() {
                a.set(row_of[w], col, c.scalar_code()?);
            }
        }
        let mut rhs = vec![0; row_of.len()];
        rhs[row_of[&Word::empty()]] = 1;
        a.solvable(&rhs, &field)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ChordClass;
    use proptest::prelude::*;

    /// Genus-2 surface with one knotted handle, built by hand: generators
    /// c (degree 2), c1, c2 (degree 1) over ℤ[μ₁,λ₁,μ₂,λ₂] with
    /// ∂c = 0, ∂c1 = 1 + λ₁ + μ₁λ₁, ∂c2 = 1 + λ₂.
    fn surface_2_1() -> Dga {
        let spec = RingSpec::integral(&["mu1", "lambda1", "mu2", "lambda2"]).unwrap();
        let alg = FreeAlgebra::new(
            spec.clone(),
            vec![
                Generator::new("c", 2),
                Generator::new("c1", 1),
                Generator::new("c2", 1),
            ],
        )
        .unwrap();
        let dc1 = NcPoly::scalar(
            &alg,
            GroupRingElem::one(&spec)
                .add(&GroupRingElem::monomial(&spec, &[0, 1, 0, 0]).unwrap())
                .unwrap()
                .add(&GroupRingElem::monomial(&spec, &[1, 1, 0, 0]).unwrap())
                .unwrap(),
        )
        .unwrap();
        let dc2 = NcPoly::scalar(
            &alg,
            GroupRingElem::one(&spec)
                .add(&GroupRingElem::monomial(&spec, &[0, 0, 0, 1]).unwrap())
                .unwrap(),
        )
        .unwrap();
        Dga::new(alg.clone(), vec![NcPoly::zero(&alg), dc1, dc2]).unwrap()
    }

    /// Two degree-1 generators over ℤ (rank 0) with ∂u = ∂v = 1.
    fn two_chords() -> Dga {
        let spec = RingSpec::integral(&[]).unwrap();
        let alg =
            FreeAlgebra::new(spec, vec![Generator::new("u", 1), Generator::new("v", 1)]).unwrap();
        let one = NcPoly::one(&alg);
        Dga::new(alg, vec![one.clone(), one]).unwrap()
    }

    #[test]
    fn leibniz_on_scalars_and_generators() {
        let d = surface_2_1();
        let alg = d.algebra();
        assert!(d.differentiate(&NcPoly::one(alg)).unwrap().is_zero());
        assert!(d.differentiate(&NcPoly::zero(alg)).unwrap().is_zero());
        let c1 = alg.gen_id("c1").unwrap();
        assert_eq!(
            d.differentiate(&NcPoly::generator(alg, c1)).unwrap(),
            *d.diff(c1)
        );
    }

    #[test]
    fn leibniz_sign_on_a_two_letter_word() {
        let d = two_chords();
        let alg = d.algebra();
        let u = NcPoly::generator(alg, alg.gen_id("u").unwrap());
        let v = NcPoly::generator(alg, alg.gen_id("v").unwrap());
        // ∂(uv) = ∂(u)v + (−1)^{|u|} u ∂(v) = v − u.
        let duv = d.differentiate(&u.mul(&v).unwrap()).unwrap();
        assert_eq!(duv, v.sub(&u).unwrap());
        assert_eq!(duv.to_string(), "-u + v");
    }

    #[test]
    fn verify_accepts_the_surface() {
        let report = surface_2_1().verify().unwrap();
        assert!(report.passed());
        assert_eq!(report.checks.len(), 3);
        assert!(report
            .checks
            .iter()
            .all(|c| c.degree_ok && c.d_squared_zero));
    }

    #[test]
    fn verify_reports_a_d_squared_failure() {
        // ∂c = c1 has the right degree but d²(c) = ∂c1 = 1 + λ₁ + μ₁λ₁ ≠ 0.
        let good = surface_2_1();
        let alg = good.algebra();
        let c1 = alg.gen_id("c1").unwrap();
        let bad = Dga::new(
            alg.clone(),
            vec![
                NcPoly::generator(alg, c1),
                good.diff(c1).clone(),
                good.diff(alg.gen_id("c2").unwrap()).clone(),
            ],
        )
        .unwrap();
        let report = bad.verify().unwrap();
        assert!(!report.passed());
        let failure = report.failure.unwrap();
        assert_eq!(failure.generator, "c");
        assert!(failure.message.contains("1 + lambda1 + mu1*lambda1"));
        assert!(report.checks[0].degree_ok);
        assert!(!report.checks[0].d_squared_zero);
    }

    #[test]
    fn verify_reports_a_degree_failure() {
        let good = surface_2_1();
        let alg = good.algebra();
        let bad = Dga::new(
            alg.clone(),
            vec![
                NcPoly::one(alg), // |c| = 2 needs degree 1, scalars have degree 0
                good.diff(alg.gen_id("c1").unwrap()).clone(),
                good.diff(alg.gen_id("c2").unwrap()).clone(),
            ],
        )
        .unwrap();
        let report = bad.verify().unwrap();
        let failure = report.failure.unwrap();
        assert_eq!(failure.generator, "c");
        assert!(!report.checks[0].degree_ok);
        assert!(report.checks[0].d_squared_zero);
    }

    #[test]
    fn goodness() {
        assert!(!surface_2_1().is_good(), "scalar parts present");
        let spec = RingSpec::integral(&[]).unwrap();
        let alg = FreeAlgebra::new(spec, vec![]).unwrap();
        let empty = Dga::new(alg, vec![]).unwrap();
        assert!(empty.is_good());
        assert!(empty.verify().unwrap().passed());
    }

    #[test]
    fn stabilization_adds_a_canceling_pair() {
        let d = surface_2_1().stabilize(3, ("sa", "sb")).unwrap();
        let alg = d.algebra();
        let sa = alg.gen_id("sa").unwrap();
        let sb = alg.gen_id("sb").unwrap();
        assert_eq!(alg.degree(sa), 3);
        assert_eq!(alg.degree(sb), 2);
        assert_eq!(*d.diff(sa), NcPoly::generator(alg, sb));
        assert!(d.diff(sb).is_zero());
        assert!(d.verify().unwrap().passed());
        // The new pair contributes no scalar part; goodness is unchanged.
        assert!(d.diff(sa).wordlength_part(0).is_zero());
        assert!(!d.is_good());
    }

    #[test]
    fn stabilization_rejects_name_collisions() {
        let d = surface_2_1();
        assert!(matches!(
            d.stabilize(1, ("c1", "x")),
            Err(Error::NameCollision(_))
        ));
        assert!(matches!(
            d.stabilize(1, ("mu1", "x")),
            Err(Error::NameCollision(_))
        ));
        assert!(matches!(
            d.stabilize(1, ("x", "x")),
            Err(Error::NameCollision(_))
        ));
    }

    #[test]
    fn elementary_auto_identity() {
        let d = surface_2_1();
        let c1 = d.algebra().gen_id("c1").unwrap();
        let one = GroupRingElem::one(d.spec());
        let zero = NcPoly::zero(d.algebra());
        let (out, phi) = d.elementary_auto(c1, &one, &zero).unwrap();
        for g in d.algebra().gen_ids() {
            assert_eq!(out.diff(g), d.diff(g));
        }
        let x = NcPoly::generator(d.algebra(), c1);
        assert_eq!(phi.apply(&x).unwrap(), x);
    }

    #[test]
    fn elementary_auto_by_a_monomial_unit() {
        // φ(c1) = λ₁·c1 rescales: ∂'(c1) = λ₁⁻¹·(1 + λ₁ + μ₁λ₁).
        let d = surface_2_1();
        let spec = d.spec();
        let c1 = d.algebra().gen_id("c1").unwrap();
        let lam = GroupRingElem::monomial(spec, &[0, 1, 0, 0]).unwrap();
        let (out, _) = d
            .elementary_auto(c1, &lam, &NcPoly::zero(d.algebra()))
            .unwrap();
        let expected = d.diff(c1).scale(&lam.unit_inverse().unwrap()).unwrap();
        assert_eq!(*out.diff(c1), expected);
        assert!(out.verify().unwrap().passed());
        // Other generators keep their differentials (they never mention c1).
        let c2 = d.algebra().gen_id("c2").unwrap();
        assert_eq!(out.diff(c2), d.diff(c2));
    }

    #[test]
    fn elementary_auto_validates_inputs() {
        let d = surface_2_1();
        let spec = d.spec();
        let alg = d.algebra();
        let c1 = alg.gen_id("c1").unwrap();
        let c2 = alg.gen_id("c2").unwrap();
        let two = GroupRingElem::from_int(spec, 2);
        assert!(matches!(
            d.elementary_auto(c1, &two, &NcPoly::zero(alg)),
            Err(Error::NotAUnit(_))
        ));
        let one = GroupRingElem::one(spec);
        let self_tail = NcPoly::generator(alg, c1);
        assert!(matches!(
            d.elementary_auto(c1, &one, &self_tail),
            Err(Error::InvalidAuto(_))
        ));
        let wrong_degree = NcPoly::generator(alg, alg.gen_id("c").unwrap());
        assert!(matches!(
            d.elementary_auto(c1, &one, &wrong_degree),
            Err(Error::DegreeMismatch(_))
        ));
        // A degree-matching tail in another generator is accepted.
        let ok_tail = NcPoly::generator(alg, c2);
        assert!(d.elementary_auto(c1, &one, &ok_tail).is_ok());
    }

    /// Exhaustive oracle: search all scalar vectors x with Σ xᵢ ∂(gᵢ) = 1.
    fn unit_in_image_by_enumeration(d: &Dga) -> bool {
        let field = d.spec().field().unwrap().clone();
        let q = field.q();
        let n = d.diffs().len();
        let one = NcPoly::one(d.algebra());
        let mut x = vec![0u64; n];
        loop {
            let mut acc = NcPoly::zero(d.algebra());
            for (i, dp) in d.diffs().iter().enumerate() {
                let c = GroupRingElem::from_code(d.spec(), x[i]).unwrap();
                acc = acc.add(&dp.scale(&c).unwrap()).unwrap();
            }
            if acc == one {
                return true;
            }
            let mut i = 0;
            loop {
                if i == n {
                    return false;
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

    /// F₂ DGA with a degree-0 generator: z (deg 0, ∂z = 0),
    /// u (deg 1, ∂u = 1 + z), t (deg 1, ∂t = 1 + z + z²).
    fn certificate_example() -> Dga {
        let spec = RingSpec::new(2, vec![]).unwrap();
        let alg = FreeAlgebra::new(
            spec.clone(),
            vec![
                Generator::new("z", 0),
                Generator::new("u", 1),
                Generator::new("t", 1),
            ],
        )
        .unwrap();
        let z = NcPoly::generator(&alg, alg.gen_id("z").unwrap());
        let one = NcPoly::one(&alg);
        let du = one.add(&z).unwrap();
        let dt = du.add(&z.mul(&z).unwrap()).unwrap();
        Dga::new(alg.clone(), vec![NcPoly::zero(&alg), du, dt]).unwrap()
    }

    #[test]
    fn unit_in_image_linear_agrees_with_enumeration() {
        let d = certificate_example();
        assert!(d.verify().unwrap().passed());
        assert!(!d.unit_in_image_linear().unwrap());
        assert!(!unit_in_image_by_enumeration(&d));

        // The knotted surface projected to F₂ has the certificate.
        let f2 = FiniteField::new(2).unwrap();
        let s = surface_2_1().specialized(&[1, 1, 1, 1], &f2).unwrap();
        assert!(s.unit_in_image_linear().unwrap());
        assert!(unit_in_image_by_enumeration(&s));

        // Empty DGA: no combination reaches 1.
        let spec = RingSpec::new(3, vec![]).unwrap();
        let empty = Dga::new(FreeAlgebra::new(spec, vec![]).unwrap(), vec![]).unwrap();
        assert!(!empty.unit_in_image_linear().unwrap());
    }

    #[test]
    fn unit_in_image_needs_a_field() {
        assert!(matches!(
            surface_2_1().unit_in_image_linear(),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn nonlinear_tail_can_create_a_linear_certificate() {
        // With tail b = z·u on target t: ∂'(t) = ∂t − ∂(zu) = 1, so the
        // certificate appears even though no scalar combination worked
        // before. The conjugated DGA still verifies — the certificate is
        // only a sufficient condition and is not invariant under moves with
        // nonlinear tails.
        let d = certificate_example();
        let alg = d.algebra();
        let t = alg.gen_id("t").unwrap();
        let tail = NcPoly::generator(alg, alg.gen_id("z").unwrap())
            .mul(&NcPoly::generator(alg, alg.gen_id("u").unwrap()))
            .unwrap();
        let one = GroupRingElem::one(d.spec());
        let (out, _) = d.elementary_auto(t, &one, &tail).unwrap();
        assert!(out.verify().unwrap().passed());
        assert_eq!(out.diff(t), &NcPoly::one(alg));
        assert!(out.unit_in_image_linear().unwrap());
        assert!(unit_in_image_by_enumeration(&out));
    }

    #[test]
    fn specialization_keeps_generators_and_kills_h1() {
        let f3 = FiniteField::new(3).unwrap();
        let d = surface_2_1();
        // (μ₁, λ₁, μ₂, λ₂) = (1, 1, 1, 2): the knotted equation hits
        // 1 + 1 + 1 = 0 and the standard one 1 + 2 = 0.
        let s = d.specialized(&[1, 1, 1, 2], &f3).unwrap();
        assert_eq!(s.spec().h1_rank(), 0);
        assert_eq!(s.spec().field().unwrap().q(), 3);
        assert!(s.diff(s.algebra().gen_id("c1").unwrap()).is_zero());
        assert!(s.diff(s.algebra().gen_id("c2").unwrap()).is_zero());
        assert!(s.verify().unwrap().passed());
        assert_eq!(
            s.algebra()
                .generator(s.algebra().gen_id("c").unwrap())
                .chord,
            ChordClass::Pure
        );
        // Zero coordinates are rejected.
        assert!(matches!(
            d.specialized(&[1, 0, 1, 1], &f3),
            Err(Error::InvalidPoint(_))
        ));
    }

    fn arb_word(n: u32, max_len: usize) -> impl Strategy<Value = Vec<u32>> {
        proptest::collection::vec(0..n, 0..=max_len)
    }

    proptest! {
        // ∂ is a degree −1 derivation: for homogeneous u and any v,
        // ∂(uv) = ∂(u)v + (−1)^{|u|} u ∂(v), for arbitrary generator
        // differentials (the identity is formal).
        #[test]
        fn leibniz_derivation_property(
            wu in arb_word(2, 3),
            wv in arb_word(2, 3),
            img0 in arb_word(2, 2),
            img1 in arb_word(2, 2),
        ) {
            let spec = RingSpec::integral(&[]).unwrap();
            let alg = FreeAlgebra::new(
                spec.clone(),
                vec![Generator::new("x", 1), Generator::new("y", 3)],
            )
            .unwrap();
            let word_poly = |ids: &[u32]| {
                NcPoly::term(
                    &alg,
                    GroupRingElem::one(&spec),
                    Word::from_ids(ids.iter().map(|&i| GenId(i)).collect()),
                )
                .unwrap()
            };
            let d = Dga::new(alg.clone(), vec![word_poly(&img0), word_poly(&img1)]).unwrap();
            let u = word_poly(&wu);
            let v = word_poly(&wv);
            let du = alg.word_degree(&Word::from_ids(wu.iter().map(|&i| GenId(i)).collect()));

            let lhs = d.differentiate(&u.mul(&v).unwrap()).unwrap();
            let mut rhs = d.differentiate(&u).unwrap().mul(&v).unwrap();
            let udv = u.mul(&d.differentiate(&v).unwrap()).unwrap();
            rhs = if du.rem_euclid(2) == 0 {
                rhs.add(&udv).unwrap()
            } else {
                rhs.sub(&udv).unwrap()
            };
            prop_assert_eq!(lhs, rhs);
        }
    }
}
