//! Twisted differentials, linear parts, graded homology over GF(q), and
//! the fingerprint machinery that tells DGAs apart.
//!
//! The pipeline: specialize a group-ring DGA at a point ρ, twist by an
//! augmentation ε so the differential becomes good, extract the
//! word-length-1 part as a chain complex of GF(q) vector spaces, and take
//! Betti numbers. Aggregating the results over all ρ and ε — together with
//! augmentation-variety point counts and the unit-in-image certificate —
//! gives a [`Fingerprint`] that is invariant under stabilization and
//! elementary automorphisms, and [`compare`] renders a verdict with a
//! human-readable witness.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::algebra::{GenId, NcPoly, Word};
use crate::augment::{enumerate_augmentations, specialize, Augmentation, RhoPoint};
use crate::dga::Dga;
use crate::error::{Error, Result};
use crate::field::FiniteField;
use crate::matrix::FMatrix;
use crate::ring::GroupRingElem;

/// A finitely supported chain complex of GF(q) vector spaces: a named
/// basis per degree and boundary matrices M_d mapping degree d to d − 1,
/// with M_d · M_{d+1} = 0 enforced at construction.
#[derive(Debug, Clone)]
pub struct ChainComplexF {
    field: FiniteField,
    basis: BTreeMap<i64, Vec<String>>,
    boundary: BTreeMap<i64, FMatrix>,
}

impl ChainComplexF {
    pub fn new(
        field: FiniteField,
        basis: BTreeMap<i64, Vec<String>>,
        boundary: BTreeMap<i64, FMatrix>,
    ) -> Result<Self> {
        let basis: BTreeMap<i64, Vec<String>> =
            basis.into_iter().filter(|(_, v)| !v.is_empty()).collect();
        let dim = |d: i64| basis.get(&d).map_or(0, Vec::len);
        for (&d, m) in &boundary {
            if m.rows() != dim(d - 1) || m.cols() != dim(d) {
                return Err(Error::DegreeMismatch(format!(
                    "boundary at degree {} has shape {}x{}, basis dictates {}x{}",
                    d,
                    m.rows(),
                    m.cols(),
                    dim(d - 1),
                    dim(d)
                )));
            }
        }
        for (&d, m) in &boundary {
            if let Some(next) = boundary.get(&(d + 1)) {
                if !m.mul(next, &field)?.is_zero() {
                    return Err(Error::VerifyFailed(format!(
                        "boundary composition into degree {} is nonzero",
                        d - 1
                    )));
                }
            }
        }
        Ok(ChainComplexF {
            field,
            basis,
            boundary,
        })
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> + '_ {
        self.basis.keys().copied()
    }

    pub fn dim(&self, d: i64) -> usize {
        self.basis.get(&d).map_or(0, Vec::len)
    }

    pub fn basis(&self, d: i64) -> &[String] {
        self.basis.get(&d).map_or(&[], Vec::as_slice)
    }

    pub fn matrix(&self, d: i64) -> Option<&FMatrix> {
        self.boundary.get(&d)
    }

    fn rank_at(&self, d: i64) -> usize {
        self.boundary.get(&d).map_or(0, |m| m.rank(&self.field))
    }
}

/// Graded dimensions with finite support; zero entries are not stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct BettiTable(BTreeMap<i64, usize>);

impl BettiTable {
    pub fn new() -> Self {
        BettiTable::default()
    }

    pub fn from_pairs(pairs: &[(i64, usize)]) -> Self {
        let mut t = BettiTable::new();
        for &(d, n) in pairs {
            t.insert(d, n);
        }
        t
    }

    pub fn insert(&mut self, degree: i64, dim: usize) {
        if dim > 0 {
            self.0.insert(degree, dim);
        }
    }

    pub fn get(&self, degree: i64) -> usize {
        self.0.get(&degree).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, usize)> + '_ {
        self.0.iter().map(|(&d, &n)| (d, n))
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Every degree moved up by `s`.
    pub fn shifted(&self, s: i64) -> BettiTable {
        BettiTable(self.0.iter().map(|(&d, &n)| (d + s, n)).collect())
    }

    /// Σ (−1)^d dim_d.
    pub fn euler(&self) -> i64 {
        self.iter()
            .map(|(d, n)| {
                if d.rem_euclid(2) == 0 {
                    n as i64
                } else {
                    -(n as i64)
                }
            })
            .sum()
    }
}

impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (d, n)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}:{}", d, n)?;
        }
        write!(f, "}}")
    }
}

impl Serialize for BettiTable {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.0.len()))?;
        for (d, n) in self.iter() {
            seq.serialize_element(&[d, n as i64])?;
        }
        seq.end()
    }
}

/// Conjugates the differential by Φ^ε (generator c ↦ c + ε(c)), which for
/// a chain map ε collapses to ∂^ε = Φ^ε ∘ ∂. The result has no scalar
/// parts — it is good — precisely because ε kills every ∂(generator).
pub fn twist(d: &Dga, eps: &Augmentation) -> Result<Dga> {
    eps.check(d)?;
    let spec = d.spec();
    let mut images = BTreeMap::new();
    for &(g, v) in eps.values() {
        if v != 0 {
            let shift = NcPoly::scalar(d.algebra(), GroupRingElem::from_code(spec, v)?)?;
            images.insert(g, NcPoly::generator(d.algebra(), g).add(&shift)?);
        }
    }
    let mut diff = Vec::with_capacity(d.diffs().len());
    for dp in d.diffs() {
        let twisted = dp.substitute(&images)?;
        if !twisted.wordlength_part(0).is_zero() {
            return Err(Error::Internal(
                "twisted differential kept a scalar part".into(),
            ));
        }
        diff.push(twisted);
    }
    Dga::new(d.algebra().clone(), diff)
}

fn field_of(d: &Dga, what: &str) -> Result<FiniteField> {
    match d.spec().field() {
        Some(f) if d.spec().h1_rank() == 0 => Ok(f.clone()),
        _ => Err(Error::Unsupported(format!(
            "{} needs field coefficients and H1 rank 0; specialize first",
            what
        ))),
    }
}

fn complex_from_gens<F: Fn(GenId) -> bool>(d: &Dga, keep: F) -> Result<ChainComplexF> {
    let field = field_of(d, "linear part")?;
    if !d.is_good() {
        return Err(Error::NotGood(
            "differential has scalar parts; twist by an augmentation first".into(),
        ));
    }
    let mut by_degree: BTreeMap<i64, Vec<GenId>> = BTreeMap::new();
    for g in d.algebra().gen_ids().filter(|&g| keep(g)) {
        by_degree.entry(d.algebra().degree(g)).or_default().push(g);
    }
    let mut basis = BTreeMap::new();
    for (&deg, gens) in &by_degree {
        basis.insert(
            deg,
            gens.iter()
                .map(|&g| d.algebra().generator(g).name.clone())
                .collect::<Vec<String>>(),
        );
    }
    let mut boundary = BTreeMap::new();
    for (&deg, cols) in &by_degree {
        let Some(rows) = by_degree.get(&(deg - 1)) else {
            continue;
        };
        let mut m = FMatrix::zeros(rows.len(), cols.len());
        for (j, &g) in cols.iter().enumerate() {
            let linear = d.diff(g).wordlength_part(1);
            for (i, &h) in rows.iter().enumerate() {
                if let Some(c) = linear.coeff_of(&Word::single(h)) {
                    m.set(i, j, c.scalar_code()?);
                }
            }
        }
        boundary.insert(deg, m);
    }
    ChainComplexF::new(field, basis, boundary)
}

/// The word-length-1 part of a good DGA over GF(q) as a chain complex:
/// basis the generators by degree, entries the coefficients of
/// single-generator words.
pub fn linear_part(d: &Dga) -> Result<ChainComplexF> {
    complex_from_gens(d, |_| true)
}

/// Betti numbers by exact Gaussian elimination:
/// dim ker(M_d) − rank(M_{d+1}) in each populated degree.
pub fn homology_betti(c: &ChainComplexF) -> BettiTable {
    let mut t = BettiTable::new();
    for d in c.degrees().collect::<Vec<_>>() {
        let betti = c.dim(d) - c.rank_at(d) - c.rank_at(d + 1);
        t.insert(d, betti);
    }
    t
}

/// Linearized Betti tables keyed by chord class. When the linear
/// differential never crosses between pure and mixed generators the
/// complex splits and both halves are recorded; otherwise the joint table
/// is stored under `pure` with `split` unset, and such records only
/// compare equal to records of the same shape.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct BettiRecord {
    pub split: bool,
    pub pure: BettiTable,
    pub mixed: BettiTable,
}

impl BettiRecord {
    /// The record with mixed degrees moved up by `s`; unsplit records are
    /// returned unchanged (they carry no separate mixed part to move).
    pub fn shifted_mixed(&self, s: i64) -> BettiRecord {
        if !self.split || s == 0 {
            return self.clone();
        }
        BettiRecord {
            split: true,
            pure: self.pure.clone(),
            mixed: self.mixed.shifted(s),
        }
    }

    fn min_mixed_degree(&self) -> Option<i64> {
        self.mixed.iter().map(|(d, _)| d).next()
    }
}

impl fmt::Display for BettiRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.split {
            write!(f, "pure {} mixed {}", self.pure, self.mixed)
        } else {
            write!(f, "joint {}", self.pure)
        }
    }
}

/// Betti data of a good DGA over GF(q), split by chord class when the
/// linear differential allows it.
pub fn pure_mixed_betti(d: &Dga) -> Result<BettiRecord> {
    let is_mixed = |g: GenId| d.algebra().generator(g).chord.is_mixed();
    let mut split = true;
    'outer: for g in d.algebra().gen_ids() {
        for (w, c) in d.diff(g).wordlength_part(1).iter_terms() {
            let h = w.factors()[0];
            if is_mixed(g) != is_mixed(h) && !c.is_zero() {
                split = false;
                break 'outer;
            }
        }
    }
    if split {
        let pure = complex_from_gens(d, |g| !is_mixed(g))?;
        let mixed = complex_from_gens(d, is_mixed)?;
        Ok(BettiRecord {
            split: true,
            pure: homology_betti(&pure),
            mixed: homology_betti(&mixed),
        })
    } else {
        let joint = linear_part(d)?;
        Ok(BettiRecord {
            split: false,
            pure: homology_betti(&joint),
            mixed: BettiTable::new(),
        })
    }
}

/// Everything recorded about one coefficient field GF(q): whether the
/// all-ones projection admits an augmentation, the augmentation-variety
/// point count, and the set of Betti records over every (ρ, ε).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QFingerprint {
    pub q: u64,
    pub aug_exists: bool,
    pub augvar_count: u64,
    pub betti: BTreeSet<BettiRecord>,
}

/// Deterministic invariant record for a DGA and a list of field orders.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Fingerprint {
    pub per_q: Vec<QFingerprint>,
    pub unit_in_image_f2: Option<bool>,
}

fn q_fingerprint(d: &Dga, q: u64, budget: u64) -> Result<QFingerprint> {
    let field = FiniteField::new(q)?;
    let rank = d.spec().h1_rank();
    let m = d.degree_zero_gens().len();
    let needed = (q as u128 - 1)
        .checked_pow(rank as u32)
        .zip((q as u128).checked_pow(m as u32))
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
    let mut aug_exists = false;
    let mut betti = BTreeSet::new();
    let mut rho = vec![1u64; rank];
    loop {
        let point = RhoPoint::new(field.clone(), rho.clone())?;
        let s = specialize(d, &point)?;
        let augs = enumerate_augmentations(&s, budget)?;
        if !augs.is_empty() {
            count += 1;
            if rho.iter().all(|&v| v == 1) {
                aug_exists = true;
            }
        }
        for eps in &augs {
            betti.insert(pure_mixed_betti(&twist(&s, eps)?)?);
        }
        let mut i = 0;
        loop {
            if i == rank {
                return Ok(QFingerprint {
                    q,
                    aug_exists,
                    augvar_count: count,
                    betti,
                });
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

/// Computes the [`Fingerprint`] of `d` over each field order in `qs`
/// (sorted, deduplicated). The unit-in-image certificate is taken over
/// GF(2) and recorded only when the coefficients reach it (characteristic
/// 0, or GF(2) itself).
pub fn fingerprint(d: &Dga, qs: &[u64], budget: u64) -> Result<Fingerprint> {
    let mut qs = qs.to_vec();
    qs.sort_unstable();
    qs.dedup();
    let mut per_q = Vec::with_capacity(qs.len());
    for q in qs {
        per_q.push(q_fingerprint(d, q, budget)?);
    }
    let unit_in_image_f2 = if d.spec().characteristic() == 0 {
        let f2 = FiniteField::new(2)?;
        let ones = RhoPoint::all_ones(f2, d.spec().h1_rank());
        Some(specialize(d, &ones)?.unit_in_image_linear()?)
    } else if d.spec().field().map(FiniteField::q) == Some(2) {
        Some(d.unit_in_image_linear()?)
    } else {
        None
    };
    Ok(Fingerprint {
        per_q,
        unit_in_image_f2,
    })
}

#[derive(Debug, Clone, Default)]
pub struct CompareOptions {
    /// Compare mixed-chord Betti degrees only up to one uniform shift,
    /// applied jointly across all q.
    pub mixed_shift: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CompareVerdict {
    /// The fingerprints differ; the witness names the first differing
    /// component.
    Distinguished(String),
    NotDistinguished,
}

fn render_set(set: &BTreeSet<BettiRecord>) -> String {
    let inner: Vec<String> = set.iter().map(BettiRecord::to_string).collect();
    format!("[{}]", inner.join("; "))
}

fn shifted_set(set: &BTreeSet<BettiRecord>, s: i64) -> BTreeSet<BettiRecord> {
    set.iter().map(|r| r.shifted_mixed(s)).collect()
}

/// Compares two DGAs through their fingerprints over `qs`. The components
/// are checked in a fixed order — augmentation-variety count, then
/// augmentation existence, per q; then the Betti record sets (up to one
/// uniform mixed-degree shift when requested); then the unit-in-image
/// certificate — and the first difference is returned as the witness.
pub fn compare(
    d1: &Dga,
    d2: &Dga,
    qs: &[u64],
    options: &CompareOptions,
    budget: u64,
) -> Result<CompareVerdict> {
    let f1 = fingerprint(d1, qs, budget)?;
    let f2 = fingerprint(d2, qs, budget)?;
    for (a, b) in f1.per_q.iter().zip(&f2.per_q) {
        if a.augvar_count != b.augvar_count {
            return Ok(CompareVerdict::Distinguished(format!(
                "augvar count at q={}: {} != {}",
                a.q, a.augvar_count, b.augvar_count
            )));
        }
        if a.aug_exists != b.aug_exists {
            return Ok(CompareVerdict::Distinguished(format!(
                "augmentation existence at q={}: {} != {}",
                a.q, a.aug_exists, b.aug_exists
            )));
        }
    }

    let betti_equal_under = |s: i64| {
        f1.per_q
            .iter()
            .zip(&f2.per_q)
            .all(|(a, b)| a.betti == shifted_set(&b.betti, s))
    };
    let reconciled = if options.mixed_shift {
        let mut candidates: BTreeSet<i64> = BTreeSet::new();
        candidates.insert(0);
        for (a, b) in f1.per_q.iter().zip(&f2.per_q) {
            for ra in &a.betti {
                for rb in &b.betti {
                    if let (Some(da), Some(db)) = (ra.min_mixed_degree(), rb.min_mixed_degree()) {
                        candidates.insert(da - db);
                    }
                }
            }
        }
        candidates.into_iter().any(betti_equal_under)
    } else {
        betti_equal_under(0)
    };
    if !reconciled {
        let (a, b) = f1
            .per_q
            .iter()
            .zip(&f2.per_q)
            .find(|(a, b)| a.betti != b.betti)
            .expect("some q differs");
        let suffix = if options.mixed_shift {
            " (no uniform mixed-degree shift reconciles them)"
        } else {
            ""
        };
        return Ok(CompareVerdict::Distinguished(format!(
            "Betti table set at q={}: {} != {}{}",
            a.q,
            render_set(&a.betti),
            render_set(&b.betti),
            suffix
        )));
    }

    if f1.unit_in_image_f2 != f2.unit_in_image_f2 {
        let show = |v: Option<bool>| match v {
            Some(true) => "yes",
            Some(false) => "no",
            None => "n/a",
        };
        return Ok(CompareVerdict::Distinguished(format!(
            "unit-in-image certificate over F2: {} != {}",
            show(f1.unit_in_image_f2),
            show(f2.unit_in_image_f2)
        )));
    }
    Ok(CompareVerdict::NotDistinguished)
}
