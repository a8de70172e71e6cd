//! The free unital noncommutative algebra over Λ[H₁] on a finite ordered
//! set of graded generators (Reeb chords).
//!
//! Words are finite sequences of generators, the empty word is the unit, and
//! a polynomial is a finite map from words to nonzero group-ring
//! coefficients (coefficients are central). Words are kept in
//! length-then-lexicographic order so polynomials have a canonical form.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ring::{is_identifier, GroupRingElem, RingSpec, TermWriter};

/// Default cap on word length; guards against runaway products.
pub const DEFAULT_WORD_CAP: usize = 16;

/// Index of a generator in its [`FreeAlgebra`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GenId(pub(crate) u32);

impl GenId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Whether a Reeb chord connects a component to itself or to another one;
/// mixed chords carry the ordered component pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ChordClass {
    Pure,
    Mixed { pair: (u32, u32) },
}

impl ChordClass {
    pub const MIXED: ChordClass = ChordClass::Mixed { pair: (0, 1) };

    pub fn is_mixed(&self) -> bool {
        matches!(self, ChordClass::Mixed { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub degree: i64,
    pub chord: ChordClass,
}

impl Generator {
    pub fn new(name: &str, degree: i64) -> Self {
        Generator {
            name: name.into(),
            degree,
            chord: ChordClass::Pure,
        }
    }

    pub fn mixed(name: &str, degree: i64) -> Self {
        Generator {
            name: name.into(),
            degree,
            chord: ChordClass::MIXED,
        }
    }
}

/// The shared context every polynomial and DGA hangs off: the coefficient
/// ring, the ordered generator list, and the word-length cap.
#[derive(Debug, PartialEq, Eq)]
pub struct FreeAlgebra {
    spec: Arc<RingSpec>,
    gens: Vec<Generator>,
    word_cap: usize,
}

impl FreeAlgebra {
    pub fn new(spec: Arc<RingSpec>, gens: Vec<Generator>) -> Result<Arc<Self>> {
        Self::with_word_cap(spec, gens, DEFAULT_WORD_CAP)
    }

    pub fn with_word_cap(
        spec: Arc<RingSpec>,
        gens: Vec<Generator>,
        word_cap: usize,
    ) -> Result<Arc<Self>> {
        for (i, g) in gens.iter().enumerate() {
            if !is_identifier(&g.name) {
                return Err(Error::InvalidRing(format!(
                    "generator name {:?} is not an identifier",
                    g.name
                )));
            }
            if gens[..i].iter().any(|h| h.name == g.name) {
                return Err(Error::NameCollision(g.name.clone()));
            }
            if spec.h1_index(&g.name).is_some() {
                return Err(Error::NameCollision(format!(
                    "generator {} shadows an H1 variable",
                    g.name
                )));
            }
        }
        Ok(Arc::new(FreeAlgebra {
            spec,
            gens,
            word_cap,
        }))
    }

    pub fn spec(&self) -> &Arc<RingSpec> {
        &self.spec
    }

    pub fn gens(&self) -> &[Generator] {
        &self.gens
    }

    pub fn gen_ids(&self) -> impl Iterator<Item = GenId> {
        (0..self.gens.len() as u32).map(GenId)
    }

    pub fn generator(&self, id: GenId) -> &Generator {
        &self.gens[id.index()]
    }

    pub fn gen_id(&self, name: &str) -> Option<GenId> {
        self.gens
            .iter()
            .position(|g| g.name == name)
            .map(|i| GenId(i as u32))
    }

    pub fn degree(&self, id: GenId) -> i64 {
        self.gens[id.index()].degree
    }

    pub fn word_cap(&self) -> usize {
        self.word_cap
    }

    pub fn word_degree(&self, w: &Word) -> i64 {
        w.factors().iter().map(|&g| self.degree(g)).sum()
    }

    /// A copy with extra generators appended (existing ids stay valid).
    pub fn extended(self: &Arc<Self>, extra: Vec<Generator>) -> Result<Arc<Self>> {
        let mut gens = self.gens.clone();
        gens.extend(extra);
        Self::with_word_cap(self.spec.clone(), gens, self.word_cap)
    }

    /// Same generators over a different coefficient ring.
    pub(crate) fn with_spec(self: &Arc<Self>, spec: Arc<RingSpec>) -> Result<Arc<Self>> {
        Self::with_word_cap(spec, self.gens.clone(), self.word_cap)
    }
}

/// A word in the generators; the empty word is the algebra unit.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word(Vec<GenId>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn single(g: GenId) -> Self {
        Word(vec![g])
    }

    pub fn from_ids(ids: Vec<GenId>) -> Self {
        Word(ids)
    }

    pub fn factors(&self) -> &[GenId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn contains(&self, g: GenId) -> bool {
        self.0.contains(&g)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// The degree of a polynomial: zero polynomials have any degree,
/// non-constant mixtures have none.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyDegree {
    Any,
    Of(i64),
    NonHomogeneous,
}

impl PolyDegree {
    /// Whether the polynomial can be used where degree `d` is required.
    pub fn matches(self, d: i64) -> bool {
        match self {
            PolyDegree::Any => true,
            PolyDegree::Of(x) => x == d,
            PolyDegree::NonHomogeneous => false,
        }
    }
}

/// An element of the free algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NcPoly {
    algebra: Arc<FreeAlgebra>,
    terms: BTreeMap<Word, GroupRingElem>,
}

impl NcPoly {
    pub fn zero(algebra: &Arc<FreeAlgebra>) -> Self {
        NcPoly {
            algebra: algebra.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(algebra: &Arc<FreeAlgebra>) -> Self {
        Self::scalar(algebra, GroupRingElem::one(algebra.spec()))
            .expect("unit scalar matches the algebra spec")
    }

    /// A group-ring scalar viewed as a polynomial (empty word).
    pub fn scalar(algebra: &Arc<FreeAlgebra>, c: GroupRingElem) -> Result<Self> {
        Self::term(algebra, c, Word::empty())
    }

    pub fn generator(algebra: &Arc<FreeAlgebra>, g: GenId) -> Self {
        let mut out = Self::zero(algebra);
        out.insert(Word::single(g), GroupRingElem::one(algebra.spec()));
        out
    }

    /// c · w for a group-ring coefficient c and word w.
    pub fn term(algebra: &Arc<FreeAlgebra>, c: GroupRingElem, w: Word) -> Result<Self> {
        if c.spec() != algebra.spec() {
            return Err(Error::SpecMismatch(
                "coefficient ring differs from the algebra's".into(),
            ));
        }
        if w.len() > algebra.word_cap() {
            return Err(Error::WordTooLong {
                len: w.len(),
                cap: algebra.word_cap(),
            });
        }
        if let Some(bad) = w
            .factors()
            .iter()
            .find(|g| g.index() >= algebra.gens().len())
        {
            return Err(Error::UnknownGenerator(format!("id {}", bad.index())));
        }
        let mut out = Self::zero(algebra);
        out.insert(w, c);
        Ok(out)
    }

    pub fn algebra(&self) -> &Arc<FreeAlgebra> {
        &self.algebra
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter_terms(&self) -> impl Iterator<Item = (&Word, &GroupRingElem)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff_of(&self, w: &Word) -> Option<&GroupRingElem> {
        self.terms.get(w)
    }

    fn insert(&mut self, w: Word, c: GroupRingElem) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().add(&c).expect("coefficients share one spec");
                if sum.is_zero() {
                    o.remove();
                } else {
                    o.insert(sum);
                }
            }
        }
    }

    fn check_algebra(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.algebra, &other.algebra) || self.algebra == other.algebra {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch(
                "operands belong to different free algebras".into(),
            ))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_algebra(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.insert(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let mut out = Self::zero(&self.algebra);
        for (w, c) in &self.terms {
            out.terms.insert(w.clone(), c.neg());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    /// Bilinear concatenation product; coefficients are central. Errors if a
    /// product word would exceed the word cap.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_algebra(other)?;
        let cap = self.algebra.word_cap();
        let mut out = Self::zero(&self.algebra);
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                let len = w1.len() + w2.len();
                if len > cap {
                    return Err(Error::WordTooLong { len, cap });
                }
                out.insert(w1.concat(w2), c1.mul(c2)?);
            }
        }
        Ok(out)
    }

    /// Multiplication by a central group-ring scalar.
    pub fn scale(&self, c: &GroupRingElem) -> Result<Self> {
        if c.spec() != self.algebra.spec() {
            return Err(Error::SpecMismatch(
                "scalar ring differs from the algebra's".into(),
            ));
        }
        let mut out = Self::zero(&self.algebra);
        for (w, coeff) in &self.terms {
            out.insert(w.clone(), coeff.mul(c)?);
        }
        Ok(out)
    }

    pub fn degree(&self) -> PolyDegree {
        let mut it = self.terms.keys();
        let first = match it.next() {
            None => return PolyDegree::Any,
            Some(w) => self.algebra.word_degree(w),
        };
        for w in it {
            if self.algebra.word_degree(w) != first {
                return PolyDegree::NonHomogeneous;
            }
        }
        PolyDegree::Of(first)
    }

    /// The sum of terms whose words have exactly `len` factors.
    pub fn wordlength_part(&self, len: usize) -> Self {
        let mut out = Self::zero(&self.algebra);
        for (w, c) in &self.terms {
            if w.len() == len {
                out.terms.insert(w.clone(), c.clone());
            }
        }
        out
    }

    pub fn max_wordlength(&self) -> usize {
        self.terms.keys().map(Word::len).max().unwrap_or(0)
    }

    pub fn mentions(&self, g: GenId) -> bool {
        self.terms.keys().any(|w| w.contains(g))
    }

    /// Applies the algebra endomorphism fixing coefficients and sending each
    /// generator g to `images(g)` (None means g maps to itself). All images
    /// must live in this polynomial's algebra.
    pub fn substitute(&self, images: &BTreeMap<GenId, NcPoly>) -> Result<Self> {
        for img in images.values() {
            self.check_algebra(img)?;
        }
        let mut out = Self::zero(&self.algebra);
        for (w, c) in &self.terms {
            let mut acc = Self::scalar(&self.algebra, c.clone())?;
            for &g in w.factors() {
                acc = match images.get(&g) {
                    Some(img) => acc.mul(img)?,
                    None => acc.mul(&Self::generator(&self.algebra, g))?,
                };
            }
            out = out.add(&acc)?;
        }
        Ok(out)
    }

    /// The same terms reattached to an algebra that extends this one (same
    /// spec and word cap, generator list a prefix). Used when appending
    /// generators.
    pub(crate) fn rehomed(&self, algebra: &Arc<FreeAlgebra>) -> Result<Self> {
        if algebra.spec() != self.algebra.spec()
            || algebra.gens().len() < self.algebra.gens().len()
            || algebra.gens()[..self.algebra.gens().len()] != *self.algebra.gens()
        {
            return Err(Error::AlgebraMismatch(
                "target algebra does not extend the source".into(),
            ));
        }
        Ok(NcPoly {
            algebra: algebra.clone(),
            terms: self.terms.clone(),
        })
    }
}

impl fmt::Display for NcPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut w = TermWriter::new();
        let spec = self.algebra.spec();
        for (word, coeff) in &self.terms {
            let names: Vec<&str> = word
                .factors()
                .iter()
                .map(|&g| self.algebra.generator(g).name.as_str())
                .collect();
            for (e, c) in coeff.iter_terms() {
                w.push(spec, c, e, &names);
            }
        }
        f.write_str(&w.finish())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn setup() -> (Arc<FreeAlgebra>, GenId, GenId) {
        let spec = RingSpec::integral(&["mu1", "lambda1"]).unwrap();
        let alg =
            FreeAlgebra::new(spec, vec![Generator::new("c1", 1), Generator::new("c2", 1)]).unwrap();
        let c1 = alg.gen_id("c1").unwrap();
        let c2 = alg.gen_id("c2").unwrap();
        (alg, c1, c2)
    }

    #[test]
    fn unit_and_noncommutativity() {
        let (alg, c1, c2) = setup();
        let p1 = NcPoly::generator(&alg, c1);
        let p2 = NcPoly::generator(&alg, c2);
        let one = NcPoly::one(&alg);
        assert_eq!(p1.mul(&one).unwrap(), p1);
        assert_eq!(one.mul(&p1).unwrap(), p1);
        assert_ne!(p1.mul(&p2).unwrap(), p2.mul(&p1).unwrap());
        assert_eq!(p1.mul(&p2).unwrap().to_string(), "c1*c2");
    }

    #[test]
    fn coefficients_are_central() {
        let (alg, c1, c2) = setup();
        let spec = alg.spec();
        let lam = GroupRingElem::monomial(spec, &[0, 1]).unwrap();
        let mu = GroupRingElem::monomial(spec, &[1, 0]).unwrap();
        let a = NcPoly::generator(&alg, c1).scale(&lam).unwrap();
        let b = NcPoly::generator(&alg, c2).scale(&mu).unwrap();
        let prod = a.mul(&b).unwrap();
        let expected = NcPoly::generator(&alg, c1)
            .mul(&NcPoly::generator(&alg, c2))
            .unwrap()
            .scale(&lam.mul(&mu).unwrap())
            .unwrap();
        assert_eq!(prod, expected);
        assert_eq!(prod.to_string(), "mu1*lambda1*c1*c2");
    }

    #[test]
    fn degrees() {
        let (alg, c1, c2) = setup();
        assert_eq!(NcPoly::one(&alg).degree(), PolyDegree::Of(0));
        assert_eq!(NcPoly::zero(&alg).degree(), PolyDegree::Any);
        assert!(NcPoly::zero(&alg).degree().matches(17));
        let w = NcPoly::generator(&alg, c1)
            .mul(&NcPoly::generator(&alg, c2))
            .unwrap();
        assert_eq!(w.degree(), PolyDegree::Of(2));
        let mixed = w.add(&NcPoly::one(&alg)).unwrap();
        assert_eq!(mixed.degree(), PolyDegree::NonHomogeneous);
        assert!(!mixed.degree().matches(2));
    }

    #[test]
    fn wordlength_parts() {
        let (alg, c1, c2) = setup();
        let p = NcPoly::one(&alg)
            .add(&NcPoly::generator(&alg, c1))
            .unwrap()
            .add(
                &NcPoly::generator(&alg, c1)
                    .mul(&NcPoly::generator(&alg, c2))
                    .unwrap(),
            )
            .unwrap();
        assert_eq!(p.wordlength_part(0), NcPoly::one(&alg));
        assert_eq!(p.wordlength_part(1), NcPoly::generator(&alg, c1));
        assert_eq!(p.wordlength_part(3), NcPoly::zero(&alg));
        assert_eq!(p.max_wordlength(), 2);
    }

    #[test]
    fn word_cap_is_a_hard_error() {
        let spec = RingSpec::integral(&[]).unwrap();
        let alg = FreeAlgebra::with_word_cap(spec, vec![Generator::new("x", 1)], 3).unwrap();
        let x = NcPoly::generator(&alg, alg.gen_id("x").unwrap());
        let xx = x.mul(&x).unwrap();
        assert!(matches!(
            xx.mul(&xx),
            Err(Error::WordTooLong { len: 4, cap: 3 })
        ));
    }

    #[test]
    fn name_collisions_rejected() {
        let spec = RingSpec::integral(&["mu1"]).unwrap();
        assert!(matches!(
            FreeAlgebra::new(
                spec.clone(),
                vec![Generator::new("a", 1), Generator::new("a", 2)]
            ),
            Err(Error::NameCollision(_))
        ));
        assert!(matches!(
            FreeAlgebra::new(spec, vec![Generator::new("mu1", 1)]),
            Err(Error::NameCollision(_))
        ));
    }

    fn arb_poly(alg: Arc<FreeAlgebra>) -> impl Strategy<Value = NcPoly> {
        let n = alg.gens().len() as u32;
        proptest::collection::vec((proptest::collection::vec(0..n, 0..3), -4i64..=4), 0..4)
            .prop_map(move |terms| {
                let mut acc = NcPoly::zero(&alg);
                for (ids, n) in terms {
                    let w = Word::from_ids(ids.into_iter().map(GenId).collect());
                    let c = GroupRingElem::from_int(alg.spec(), n);
                    acc = acc.add(&NcPoly::term(&alg, c, w).unwrap()).unwrap();
                }
                acc
            })
    }

    proptest! {
        #[test]
        fn multiplication_is_associative_and_unital(
            seed in (0u64..1000).prop_map(|_| ()),
            triple in {
                let (alg, _, _) = setup();
                (arb_poly(alg.clone()), arb_poly(alg.clone()), arb_poly(alg))
            }
        ) {
            let _ = seed;
            let (a, b, c) = triple;
            let one = NcPoly::one(a.algebra());
            prop_assert_eq!(a.mul(&one).unwrap(), a.clone());
            prop_assert_eq!(one.mul(&a).unwrap(), a.clone());
            prop_assert_eq!(
                a.mul(&b).unwrap().mul(&c).unwrap(),
                a.mul(&b.mul(&c).unwrap()).unwrap()
            );
            prop_assert_eq!(
                a.mul(&b.add(&c).unwrap()).unwrap(),
                a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
            );
        }

        // Degrees add under multiplication of homogeneous polynomials.
        #[test]
        fn degree_additivity(pair in {
            let (alg, _, _) = setup();
            (arb_poly(alg.clone()), arb_poly(alg))
        }) {
            let (a, b) = pair;
            if let (PolyDegree::Of(da), PolyDegree::Of(db)) = (a.degree(), b.degree()) {
                let prod = a.mul(&b).unwrap();
                prop_assert!(prod.degree().matches(da + db));
            }
        }

        // A polynomial is the sum of its word-length parts.
        #[test]
        fn wordlength_reassembly(a in {
            let (alg, _, _) = setup();
            arb_poly(alg)
        }) {
            let mut sum = NcPoly::zero(a.algebra());
            for len in 0..=a.max_wordlength() {
                sum = sum.add(&a.wordlength_part(len)).unwrap();
            }
            prop_assert_eq!(sum, a);
        }
    }
}
