//! The coefficient ring Λ[H₁(L)]: the group ring of a free abelian group
//! over ℤ or GF(q), i.e. Laurent polynomials in finitely many commuting
//! invertible variables.
//!
//! A [`RingSpec`] fixes the ground ring (characteristic 0 means ℤ,
//! otherwise GF(q) with q a prime power) and the ordered H₁ basis names.
//! A [`GroupRingElem`] is a finite map from dense exponent vectors to
//! nonzero coefficients, kept in lexicographic order so equal elements have
//! identical canonical forms.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::field::FiniteField;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoeffDomain {
    /// Characteristic zero: arbitrary-precision integers.
    Int,
    /// GF(q) with elements stored as integer codes.
    Field(FiniteField),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingSpec {
    domain: CoeffDomain,
    h1_names: Vec<String>,
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl RingSpec {
    /// `order` 0 builds ℤ coefficients; otherwise GF(order) with `order` a
    /// prime power. Names must be distinct identifiers.
    pub fn new(order: u64, h1_names: Vec<String>) -> Result<Arc<Self>> {
        let domain = if order == 0 {
            CoeffDomain::Int
        } else {
            CoeffDomain::Field(FiniteField::new(order)?)
        };
        for (i, name) in h1_names.iter().enumerate() {
            if !is_identifier(name) {
                return Err(Error::InvalidRing(format!(
                    "H1 name {name:?} is not an identifier"
                )));
            }
            if h1_names[..i].contains(name) {
                return Err(Error::InvalidRing(format!("duplicate H1 name {name:?}")));
            }
        }
        Ok(Arc::new(RingSpec { domain, h1_names }))
    }

    pub fn integral(h1_names: &[&str]) -> Result<Arc<Self>> {
        Self::new(0, h1_names.iter().map(|s| s.to_string()).collect())
    }

    pub fn domain(&self) -> &CoeffDomain {
        &self.domain
    }

    /// 0 for ℤ, else the prime p with q = p^k.
    pub fn characteristic(&self) -> u64 {
        match &self.domain {
            CoeffDomain::Int => 0,
            CoeffDomain::Field(f) => f.characteristic(),
        }
    }

    pub fn field(&self) -> Option<&FiniteField> {
        match &self.domain {
            CoeffDomain::Int => None,
            CoeffDomain::Field(f) => Some(f),
        }
    }

    pub fn h1_rank(&self) -> usize {
        self.h1_names.len()
    }

    pub fn h1_names(&self) -> &[String] {
        &self.h1_names
    }

    pub fn h1_index(&self, name: &str) -> Option<usize> {
        self.h1_names.iter().position(|n| n == name)
    }

    pub(crate) fn c_from_bigint(&self, n: &BigInt) -> Coeff {
        match &self.domain {
            CoeffDomain::Int => Coeff::Int(n.clone()),
            CoeffDomain::Field(f) => Coeff::Fq(f.from_bigint(n)),
        }
    }

    pub(crate) fn c_add(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (&self.domain, a, b) {
            (CoeffDomain::Int, Coeff::Int(x), Coeff::Int(y)) => Coeff::Int(x + y),
            (CoeffDomain::Field(f), Coeff::Fq(x), Coeff::Fq(y)) => Coeff::Fq(f.add(*x, *y)),
            _ => unreachable!("coefficient kind matches its ring spec"),
        }
    }

    pub(crate) fn c_mul(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (&self.domain, a, b) {
            (CoeffDomain::Int, Coeff::Int(x), Coeff::Int(y)) => Coeff::Int(x * y),
            (CoeffDomain::Field(f), Coeff::Fq(x), Coeff::Fq(y)) => Coeff::Fq(f.mul(*x, *y)),
            _ => unreachable!("coefficient kind matches its ring spec"),
        }
    }

    pub(crate) fn c_neg(&self, a: &Coeff) -> Coeff {
        match (&self.domain, a) {
            (CoeffDomain::Int, Coeff::Int(x)) => Coeff::Int(-x),
            (CoeffDomain::Field(f), Coeff::Fq(x)) => Coeff::Fq(f.neg(*x)),
            _ => unreachable!("coefficient kind matches its ring spec"),
        }
    }
}

/// A scalar of the ground ring: a BigInt over ℤ, an element code over GF(q).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Coeff {
    Int(BigInt),
    Fq(u64),
}

impl Coeff {
    pub fn is_zero(&self) -> bool {
        match self {
            Coeff::Int(n) => n.is_zero(),
            Coeff::Fq(c) => *c == 0,
        }
    }

    fn is_one(&self) -> bool {
        match self {
            Coeff::Int(n) => n.is_one(),
            Coeff::Fq(c) => *c == 1,
        }
    }
}

/// An element of Λ[H₁]: finitely many terms coeff · x^e with e a dense
/// exponent vector over the H₁ basis (negative exponents allowed).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupRingElem {
    spec: Arc<RingSpec>,
    terms: BTreeMap<Vec<i64>, Coeff>,
}

impl GroupRingElem {
    pub fn zero(spec: &Arc<RingSpec>) -> Self {
        GroupRingElem {
            spec: spec.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(spec: &Arc<RingSpec>) -> Self {
        Self::from_int(spec, 1)
    }

    pub fn from_int(spec: &Arc<RingSpec>, n: i64) -> Self {
        Self::from_bigint(spec, &BigInt::from(n))
    }

    pub fn from_bigint(spec: &Arc<RingSpec>, n: &BigInt) -> Self {
        let mut out = Self::zero(spec);
        out.insert(vec![0; spec.h1_rank()], spec.c_from_bigint(n));
        out
    }

    /// A scalar from a field element code. Errors on ℤ specs or bad codes.
    pub fn from_code(spec: &Arc<RingSpec>, code: u64) -> Result<Self> {
        let f = spec.field().ok_or_else(|| {
            Error::SpecMismatch("element codes need a field coefficient ring".into())
        })?;
        f.check(code)?;
        let mut out = Self::zero(spec);
        out.insert(vec![0; spec.h1_rank()], Coeff::Fq(code));
        Ok(out)
    }

    /// The monomial x^exps with coefficient 1.
    pub fn monomial(spec: &Arc<RingSpec>, exps: &[i64]) -> Result<Self> {
        Self::term_int(spec, 1, exps)
    }

    /// n · x^exps.
    pub fn term_int(spec: &Arc<RingSpec>, n: i64, exps: &[i64]) -> Result<Self> {
        if exps.len() != spec.h1_rank() {
            return Err(Error::SpecMismatch(format!(
                "exponent vector has length {}, H1 rank is {}",
                exps.len(),
                spec.h1_rank()
            )));
        }
        let mut out = Self::zero(spec);
        out.insert(exps.to_vec(), spec.c_from_bigint(&BigInt::from(n)));
        Ok(out)
    }

    pub(crate) fn term(spec: &Arc<RingSpec>, coeff: Coeff, exps: Vec<i64>) -> Result<Self> {
        if exps.len() != spec.h1_rank() {
            return Err(Error::SpecMismatch(format!(
                "exponent vector has length {}, H1 rank is {}",
                exps.len(),
                spec.h1_rank()
            )));
        }
        let mut out = Self::zero(spec);
        out.insert(exps, coeff);
        Ok(out)
    }

    pub fn spec(&self) -> &Arc<RingSpec> {
        &self.spec
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .all(|(e, c)| e.iter().all(|&x| x == 0) && c.is_one())
    }

    pub fn iter_terms(&self) -> impl Iterator<Item = (&Vec<i64>, &Coeff)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn insert(&mut self, exps: Vec<i64>, coeff: Coeff) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = self.spec.c_add(o.get(), &coeff);
                if sum.is_zero() {
                    o.remove();
                } else {
                    o.insert(sum);
                }
            }
        }
    }

    fn check_spec(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.spec, &other.spec) || self.spec == other.spec {
            Ok(())
        } else {
            Err(Error::SpecMismatch(
                "operands belong to different coefficient rings".into(),
            ))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_spec(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let mut out = Self::zero(&self.spec);
        for (e, c) in &self.terms {
            out.terms.insert(e.clone(), self.spec.c_neg(c));
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_spec(other)?;
        let mut out = Self::zero(&self.spec);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<i64> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.insert(e, self.spec.c_mul(c1, c2));
            }
        }
        Ok(out)
    }

    /// Evaluates at a point of (GF(q)^*)^rank: the ring homomorphism sending
    /// the i-th H₁ variable to `rho[i]`. Coefficients map through
    /// ℤ → GF(q), or along F_p ⊆ GF(q); the spec characteristic must be 0 or
    /// divide q.
    pub fn eval(&self, rho: &[u64], field: &FiniteField) -> Result<u64> {
        if rho.len() != self.spec.h1_rank() {
            return Err(Error::InvalidPoint(format!(
                "point has {} coordinates, H1 rank is {}",
                rho.len(),
                self.spec.h1_rank()
            )));
        }
        for &v in rho {
            field.check(v)?;
            if v == 0 {
                return Err(Error::InvalidPoint(
                    "points must have invertible (nonzero) coordinates".into(),
                ));
            }
        }
        let map_coeff = coeff_map(&self.spec, field)?;
        let mut acc = 0u64;
        for (e, c) in &self.terms {
            let mut t = map_coeff(c);
            for (i, &exp) in e.iter().enumerate() {
                if exp != 0 {
                    t = field.mul(t, field.pow(rho[i], exp)?);
                }
            }
            acc = field.add(acc, t);
        }
        Ok(acc)
    }

    /// For rank-0 specs: the element as a plain scalar.
    pub(crate) fn as_scalar(&self) -> Option<&Coeff> {
        if self.spec.h1_rank() != 0 {
            return None;
        }
        match self.terms.len() {
            0 => None,
            _ => self.terms.values().next(),
        }
    }

    /// For rank-0 field specs: the element code (0 for the zero element).
    pub(crate) fn scalar_code(&self) -> Result<u64> {
        if self.spec.h1_rank() != 0 || self.spec.field().is_none() {
            return Err(Error::SpecMismatch(
                "expected a scalar over a field (rank-0 spec)".into(),
            ));
        }
        match self.as_scalar() {
            None => Ok(0),
            Some(Coeff::Fq(c)) => Ok(*c),
            Some(Coeff::Int(_)) => unreachable!("field spec carries field coefficients"),
        }
    }

    /// Single-term elements with a unit coefficient (±1 over ℤ, any nonzero
    /// scalar over a field) are the units of the group ring.
    pub fn as_unit(&self) -> Option<(&Vec<i64>, &Coeff)> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next().unwrap();
        let ok = match c {
            Coeff::Int(n) => n.is_one() || (-n).is_one(),
            Coeff::Fq(code) => *code != 0,
        };
        ok.then_some((e, c))
    }

    pub fn unit_inverse(&self) -> Result<Self> {
        let (e, c) = self
            .as_unit()
            .ok_or_else(|| Error::NotAUnit(self.to_string()))?;
        let inv_exps: Vec<i64> = e.iter().map(|x| -x).collect();
        let inv_coeff = match c {
            Coeff::Int(n) => Coeff::Int(n.clone()), // ±1 is its own inverse
            Coeff::Fq(code) => Coeff::Fq(
                self.spec
                    .field()
                    .expect("Fq coefficient implies field spec")
                    .inv(*code)?,
            ),
        };
        Self::term(&self.spec, inv_coeff, inv_exps)
    }

    /// Re-coordinatizes onto `target`, a spec over ℤ with the same H₁ names.
    /// F_p coefficients lift along their canonical representatives; GF(p^k)
    /// codes with k > 1 have no canonical integer lift and are rejected.
    pub fn lift_to_int(&self, target: &Arc<RingSpec>) -> Result<Self> {
        if target.characteristic() != 0 || target.h1_names() != self.spec.h1_names() {
            return Err(Error::SpecMismatch(
                "lift target must be the integral spec with the same H1 names".into(),
            ));
        }
        if let Some(f) = self.spec.field() {
            if f.degree() > 1 {
                return Err(Error::Unsupported(format!(
                    "no canonical integer lift from GF({})",
                    f.q()
                )));
            }
        }
        let mut out = Self::zero(target);
        for (e, c) in &self.terms {
            let n = match c {
                Coeff::Int(n) => n.clone(),
                Coeff::Fq(code) => BigInt::from(*code),
            };
            out.insert(e.clone(), Coeff::Int(n));
        }
        Ok(out)
    }
}

/// How coefficients of `spec` map into `field`; errors when no canonical
/// ring map exists.
pub(crate) fn coeff_map<'f>(
    spec: &RingSpec,
    field: &'f FiniteField,
) -> Result<impl Fn(&Coeff) -> u64 + 'f> {
    let identity = match spec.field() {
        None => false,
        Some(f) if f == field => true,
        Some(f) if f.degree() == 1 && f.characteristic() == field.characteristic() => false,
        Some(f) => {
            return Err(Error::Unsupported(format!(
                "no canonical map GF({}) -> GF({})",
                f.q(),
                field.q()
            )))
        }
    };
    if spec.characteristic() != 0 && spec.characteristic() != field.characteristic() {
        return Err(Error::InvalidPoint(format!(
            "coefficient characteristic {} is incompatible with GF({})",
            spec.characteristic(),
            field.q()
        )));
    }
    Ok(move |c: &Coeff| match c {
        Coeff::Int(n) => field.from_bigint(n),
        Coeff::Fq(code) if identity => *code,
        Coeff::Fq(code) => field.from_bigint(&BigInt::from(*code)),
    })
}

/// Shared canonical term renderer for group-ring elements and free-algebra
/// polynomials: `1 + lambda1 + mu1*lambda1`, `2 - 3*mu1^-1*c1*c2`.
pub(crate) struct TermWriter {
    out: String,
    any: bool,
}

impl TermWriter {
    pub(crate) fn new() -> Self {
        TermWriter {
            out: String::new(),
            any: false,
        }
    }

    pub(crate) fn push(&mut self, spec: &RingSpec, coeff: &Coeff, exps: &[i64], gens: &[&str]) {
        let mut factors: Vec<String> = Vec::new();
        for (i, &e) in exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let name = &spec.h1_names()[i];
            if e == 1 {
                factors.push(name.clone());
            } else {
                factors.push(format!("{name}^{e}"));
            }
        }
        factors.extend(gens.iter().map(|g| g.to_string()));

        let (negative, magnitude) = match coeff {
            Coeff::Int(n) => (n.is_negative(), n.abs().to_string()),
            Coeff::Fq(c) => (false, c.to_string()),
        };
        if self.any {
            self.out.push_str(if negative { " - " } else { " + " });
        } else if negative {
            self.out.push('-');
        }
        self.any = true;

        let show_numeral = magnitude != "1" || factors.is_empty();
        if show_numeral {
            self.out.push_str(&magnitude);
            if !factors.is_empty() {
                self.out.push('*');
            }
        }
        self.out.push_str(&factors.join("*"));
    }

    pub(crate) fn finish(self) -> String {
        if self.any {
            self.out
        } else {
            "0".into()
        }
    }
}

impl fmt::Display for GroupRingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut w = TermWriter::new();
        for (e, c) in &self.terms {
            w.push(&self.spec, c, e, &[]);
        }
        f.write_str(&w.finish())
    }
}
