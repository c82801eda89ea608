//! Submodularity tests and the decomposition of binary submodular tables
//! into sums of generalized interval functions.
//!
//! Decomposition runs in two stages. Preprocessing removes inconsistent
//! (all-infinite) and penalized (all-positive) rows and columns, each removal
//! emitting a unary-in-effect term. The remaining table has a zero in every
//! row and column and is peeled in `O(M^3)` by a row sweep followed by a
//! column sweep, each keeping a running array of amounts already subtracted
//! from the rows (or columns) not yet visited.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::evaluation::Evaluation;
use crate::interval::{ArgPattern, DecompositionTerm};
use crate::table::{decode_tuple, encode_tuple, BinaryTable, KaryTable, UnaryTable};

/// A quadruple with `u < x`, `v < y` and
/// `f(u, v) + f(x, y) > f(u, y) + f(x, v)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Witness {
    pub u: usize,
    pub v: usize,
    pub x: usize,
    pub y: usize,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "u={} v={} x={} y={}", self.u, self.v, self.x, self.y)
    }
}

/// Pair of k-tuples violating the lattice inequality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KaryWitness {
    pub first: Vec<usize>,
    pub second: Vec<usize>,
}

#[inline]
fn violates(t: &BinaryTable, u: usize, v: usize, x: usize, y: usize) -> bool {
    t.get(u, v) + t.get(x, y) > t.get(u, y) + t.get(x, v)
}

/// Reference check over every quadruple `u < x`, `v < y`, in lexicographic
/// order of `(u, v, x, y)`.
pub fn full_quadruple_check(t: &BinaryTable) -> Result<(), Witness> {
    let m = t.size();
    for u in 1..=m {
        for v in 1..=m {
            for x in u + 1..=m {
                for y in v + 1..=m {
                    if violates(t, u, v, x, y) {
                        return Err(Witness { u, v, x, y });
                    }
                }
            }
        }
    }
    Ok(())
}

/// Checks only adjacent quadruples `(u, v, u + 1, v + 1)`. Sufficient when
/// every entry is finite, since the general inequality is a telescoping sum
/// of adjacent ones; with infinite entries it can miss violations.
pub fn adjacent_quadruple_check(t: &BinaryTable) -> Result<(), Witness> {
    let m = t.size();
    for u in 1..m {
        for v in 1..m {
            if violates(t, u, v, u + 1, v + 1) {
                return Err(Witness {
                    u,
                    v,
                    x: u + 1,
                    y: v + 1,
                });
            }
        }
    }
    Ok(())
}

/// Entries rescaled to a common denominator so the quadruple scans run on
/// machine integers. `None` is infinity.
struct ScaledGrid {
    size: usize,
    cells: Vec<Option<i128>>,
}

impl ScaledGrid {
    const LIMIT: i128 = 1 << 100;

    fn new(t: &BinaryTable) -> Option<Self> {
        let mut lcm = BigInt::one();
        for r in t.values().iter().filter_map(Evaluation::as_rational) {
            lcm = lcm.lcm(r.denom());
        }
        let mut cells = Vec::with_capacity(t.values().len());
        for e in t.values() {
            cells.push(match e.as_rational() {
                None => None,
                Some(r) => {
                    let scaled = (r.numer() * (&lcm / r.denom())).to_i128()?;
                    if scaled >= Self::LIMIT {
                        return None;
                    }
                    Some(scaled)
                }
            });
        }
        Some(ScaledGrid { size: t.size(), cells })
    }

    #[inline]
    fn get(&self, x: usize, y: usize) -> Option<i128> {
        self.cells[(x - 1) * self.size + (y - 1)]
    }

    #[inline]
    fn violates(&self, u: usize, v: usize, x: usize, y: usize) -> bool {
        let sum = |a: Option<i128>, b: Option<i128>| a.zip(b).map(|(a, b)| a + b);
        match (sum(self.get(u, v), self.get(x, y)), sum(self.get(u, y), self.get(x, v))) {
            (_, None) => false,
            (None, Some(_)) => true,
            (Some(lhs), Some(rhs)) => lhs > rhs,
        }
    }

    fn first_violation(&self, adjacent_only: bool) -> Option<Witness> {
        let m = self.size;
        for u in 1..=m {
            for v in 1..=m {
                let (xs, ys) = if adjacent_only {
                    (u + 1..=(u + 1).min(m), v + 1..=(v + 1).min(m))
                } else {
                    (u + 1..=m, v + 1..=m)
                };
                for x in xs {
                    for y in ys.clone() {
                        if self.violates(u, v, x, y) {
                            return Some(Witness { u, v, x, y });
                        }
                    }
                }
            }
        }
        None
    }
}

/// Monge test for a binary table. Returns the lexicographically first
/// violating `(u, v, x, y)` when the table is not submodular.
///
/// Finite tables are screened with the adjacent check; tables containing
/// infinity take the full scan. Both run on integer-rescaled entries when
/// they fit in 128 bits.
pub fn is_submodular_binary(t: &BinaryTable) -> Result<(), Witness> {
    let finite = !t.has_infinite();
    match ScaledGrid::new(t) {
        Some(grid) => {
            if finite && grid.first_violation(true).is_none() {
                return Ok(());
            }
            grid.first_violation(false).map_or(Ok(()), Err)
        }
        None => {
            if finite && adjacent_quadruple_check(t).is_ok() {
                return Ok(());
            }
            full_quadruple_check(t)
        }
    }
}

/// Upper bound on unordered tuple pairs examined by [`is_submodular_kary`].
pub const KARY_PAIR_LIMIT: u128 = 20_000_000;

/// Lattice inequality `f(a ^ b) + f(a v b) <= f(a) + f(b)` over all pairs of
/// tuples, for arity up to 3. Pairs are scanned with `a` before `b` in
/// lexicographic order; the first violation is returned.
pub fn is_submodular_kary(f: &KaryTable) -> Result<Result<(), KaryWitness>> {
    let k = f.arity();
    if k > 3 {
        return Err(Error::TooLarge(format!("arity {k} exceeds 3")));
    }
    let n = f.len() as u128;
    if n * n.saturating_sub(1) / 2 > KARY_PAIR_LIMIT {
        return Err(Error::TooLarge(format!("{n} tuples")));
    }
    let m = f.size();
    let mut a = vec![0; k];
    let mut b = vec![0; k];
    let mut lo = vec![0; k];
    let mut hi = vec![0; k];
    for i in 0..f.len() {
        decode_tuple(i, m, &mut a);
        for j in i + 1..f.len() {
            decode_tuple(j, m, &mut b);
            for c in 0..k {
                lo[c] = a[c].min(b[c]);
                hi[c] = a[c].max(b[c]);
            }
            let (il, ih) = (encode_tuple(&lo, m), encode_tuple(&hi, m));
            if (il == i && ih == j) || (il == j && ih == i) {
                continue;
            }
            if f.get_index(il) + f.get_index(ih) > f.get_index(i) + f.get_index(j) {
                return Ok(Err(KaryWitness { first: a, second: b }));
            }
        }
    }
    Ok(Ok(()))
}

/// Number of non-zero entries; infinity counts.
pub fn tightness(t: &BinaryTable) -> usize {
    t.values().iter().filter(|e| !e.is_zero()).count()
}

/// A list of routed interval terms whose pointwise sum is a binary function
/// over `1..=size`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub terms: Vec<DecompositionTerm>,
    pub size: usize,
}

impl Decomposition {
    pub fn reconstruct(&self) -> BinaryTable {
        reconstruct(&self.terms, self.size)
    }
}

/// Pointwise sum of the terms over `1..=size`.
pub fn reconstruct(terms: &[DecompositionTerm], size: usize) -> BinaryTable {
    let mut out = BinaryTable::zeros(size);
    for term in terms {
        if term.interval.weight.is_zero() {
            continue;
        }
        for x in 1..=size {
            for y in 1..=size {
                let (p, q) = term.pattern.route(x, y);
                if term.interval.is_active(p, q) {
                    let sum = out.get(x, y) + &term.interval.weight;
                    out.set(x, y, sum);
                }
            }
        }
    }
    out
}

/// `psi(x) = sum_d eta^{psi(d)}[d,d](x, x)`, skipping zero weights.
pub fn decompose_unary(u: &UnaryTable) -> Vec<DecompositionTerm> {
    (1..=u.size())
        .filter(|&d| !u.get(d).is_zero())
        .map(|d| DecompositionTerm::new(d, d, u.get(d).clone(), ArgPattern::XX))
        .collect()
}

fn require_submodular(t: &BinaryTable) -> Result<()> {
    is_submodular_binary(t).map_err(|witness| Error::NotSubmodular {
        constraint: None,
        witness,
    })
}

fn row_inconsistent(t: &BinaryTable, a: usize) -> bool {
    t.row(a).iter().all(Evaluation::is_infinite)
}

enum InconsistentRows {
    None,
    Stripped,
    All,
}

/// Replaces every all-infinite row by an adjacent consistent one, emitting
/// `eta^inf[a,a]` with `pattern` per replaced row.
fn strip_inconsistent_rows(
    w: &mut BinaryTable,
    pattern: ArgPattern,
    terms: &mut Vec<DecompositionTerm>,
) -> InconsistentRows {
    let m = w.size();
    if (1..=m).all(|a| row_inconsistent(w, a)) {
        return InconsistentRows::All;
    }
    let mut stripped = false;
    loop {
        let mut progressed = false;
        for a in 1..=m {
            if !row_inconsistent(w, a) {
                continue;
            }
            let b = if a > 1 && !row_inconsistent(w, a - 1) {
                a - 1
            } else if a < m && !row_inconsistent(w, a + 1) {
                a + 1
            } else {
                continue;
            };
            for y in 1..=m {
                let v = w.get(b, y).clone();
                w.set(a, y, v);
            }
            terms.push(DecompositionTerm::new(a, a, Evaluation::infinite(), pattern));
            progressed = true;
            stripped = true;
        }
        if !progressed {
            break;
        }
    }
    if stripped {
        InconsistentRows::Stripped
    } else {
        InconsistentRows::None
    }
}

/// Subtracts the row minimum from every all-positive row, emitting
/// `eta^min[a,a]` with `pattern`.
fn strip_penalized_rows(w: &mut BinaryTable, pattern: ArgPattern, terms: &mut Vec<DecompositionTerm>) -> Result<bool> {
    let m = w.size();
    let mut stripped = false;
    for a in 1..=m {
        if w.row(a).iter().any(Evaluation::is_zero) {
            continue;
        }
        let min = w.row(a).iter().min().cloned().expect("non-empty row");
        if min.is_infinite() {
            return Err(Error::PreconditionViolated(format!(
                "row {a} is inconsistent; strip inconsistent values first"
            )));
        }
        for y in 1..=m {
            let v = w.get(a, y).checked_sub(&min)?;
            w.set(a, y, v);
        }
        terms.push(DecompositionTerm::new(a, a, min, pattern));
        stripped = true;
    }
    Ok(stripped)
}

fn transposed_term(mut t: DecompositionTerm) -> DecompositionTerm {
    t.pattern = match t.pattern {
        ArgPattern::XY => ArgPattern::YX,
        ArgPattern::YX => ArgPattern::XY,
        ArgPattern::XX => ArgPattern::YY,
        ArgPattern::YY => ArgPattern::XX,
    };
    t
}

/// Runs `f` on the transpose of `w`, translating emitted terms back.
fn on_transpose<R>(
    w: &mut BinaryTable,
    terms: &mut Vec<DecompositionTerm>,
    f: impl FnOnce(&mut BinaryTable, &mut Vec<DecompositionTerm>) -> R,
) -> R {
    let mut wt = w.transpose();
    let mut local = Vec::new();
    let r = f(&mut wt, &mut local);
    *w = wt.transpose();
    terms.extend(local.into_iter().map(transposed_term));
    r
}

/// Removes inconsistent rows, then inconsistent columns. When every row is
/// inconsistent the whole table is the single term `eta^inf[1,M](x, y)`.
///
/// Returns the emitted terms and the residual; terms plus residual reproduce
/// the input pointwise.
pub fn strip_inconsistent(t: &BinaryTable) -> Result<(Vec<DecompositionTerm>, BinaryTable)> {
    require_submodular(t)?;
    let mut w = t.clone();
    let mut terms = Vec::new();
    strip_inconsistent_impl(&mut w, &mut terms);
    Ok((terms, w))
}

/// Returns `true` when the table was entirely infinite.
fn strip_inconsistent_impl(w: &mut BinaryTable, terms: &mut Vec<DecompositionTerm>) -> bool {
    let m = w.size();
    if let InconsistentRows::All = strip_inconsistent_rows(w, ArgPattern::XX, terms) {
        terms.push(DecompositionTerm::new(1, m, Evaluation::infinite(), ArgPattern::XY));
        *w = BinaryTable::zeros(m);
        return true;
    }
    on_transpose(w, terms, |wt, local| {
        strip_inconsistent_rows(wt, ArgPattern::XX, local);
    });
    false
}

/// Removes penalized rows, then penalized columns, until neither remains.
/// The input (and its transpose) must have no inconsistent values.
pub fn strip_penalized(t: &BinaryTable) -> Result<(Vec<DecompositionTerm>, BinaryTable)> {
    require_submodular(t)?;
    let mut w = t.clone();
    let mut terms = Vec::new();
    strip_penalized_impl(&mut w, &mut terms)?;
    Ok((terms, w))
}

fn strip_penalized_impl(w: &mut BinaryTable, terms: &mut Vec<DecompositionTerm>) -> Result<bool> {
    let mut any = false;
    loop {
        let rows = strip_penalized_rows(w, ArgPattern::XX, terms)?;
        let cols = on_transpose(w, terms, |wt, local| strip_penalized_rows(wt, ArgPattern::XX, local))?;
        if !(rows || cols) {
            return Ok(any);
        }
        any = true;
    }
}

/// Row sweep: for each row from the bottom, peels interval terms
/// `eta^delta[j+1, i](y, x)` until the last column of the row is zero.
/// `acc[k]` holds the total already subtracted from column `k` of every row
/// above the current one.
///
/// An infinite `delta` zeroes only the pivot cell and the scan moves on; a
/// term is not emitted when an earlier infinite term already covers it.
fn sweep_rows<'o>(
    w: &mut BinaryTable,
    pattern: ArgPattern,
    terms: &mut Vec<DecompositionTerm>,
    mut observe: Option<&mut (dyn FnMut(&BinaryTable) + 'o)>,
) -> Result<()> {
    let m = w.size();
    let mut acc = vec![Evaluation::zero(); m + 1];
    for i in (1..=m).rev() {
        let mut row: Vec<Evaluation> = Vec::with_capacity(m + 1);
        row.push(Evaluation::zero());
        for (k, a) in acc.iter().enumerate().skip(1) {
            row.push(w.get(i, k).checked_sub(a)?);
        }
        while !row[m].is_zero() {
            let mut j = m;
            while j > 0 && !row[j].is_zero() {
                j -= 1;
            }
            if j == 0 {
                return Err(Error::PreconditionViolated(format!(
                    "row {i} has no zero entry during decomposition"
                )));
            }
            let delta = row[j + 1].clone();
            if !(delta.is_infinite() && acc[j + 1].is_infinite()) {
                terms.push(DecompositionTerm::new(j + 1, i, delta.clone(), pattern));
            }
            for k in j + 1..=m {
                row[k] = row[k].checked_sub(&delta)?;
                acc[k] = &acc[k] + &delta;
            }
            if delta.is_infinite() {
                row[j + 1] = Evaluation::zero();
            }
        }
        for (k, v) in row.into_iter().enumerate().skip(1) {
            w.set(i, k, v);
        }
        if let Some(f) = observe.as_deref_mut() {
            let mut snapshot = w.clone();
            for x in 1..i {
                for (k, a) in acc.iter().enumerate().skip(1) {
                    snapshot.set(x, k, w.get(x, k).checked_sub(a)?);
                }
            }
            f(&snapshot);
        }
    }
    Ok(())
}

/// Decomposes a binary submodular table into routed interval terms whose
/// pointwise sum equals the table exactly. Zero-weight terms are never
/// emitted and the term count is at most `2M(M + 1)`.
pub fn decompose_binary(t: &BinaryTable) -> Result<Decomposition> {
    decompose_impl(t, None)
}

/// As [`decompose_binary`], calling `observe` with the full residual table
/// after every preprocessing round and after every row and column of the
/// two sweeps.
pub fn decompose_binary_observed(t: &BinaryTable, observe: &mut dyn FnMut(&BinaryTable)) -> Result<Decomposition> {
    decompose_impl(t, Some(observe))
}

fn decompose_impl<'o>(
    t: &BinaryTable,
    mut observe: Option<&mut (dyn FnMut(&BinaryTable) + 'o)>,
) -> Result<Decomposition> {
    require_submodular(t)?;
    let m = t.size();
    let mut w = t.clone();
    let mut terms = Vec::new();

    loop {
        let before = terms.len();
        if strip_inconsistent_impl(&mut w, &mut terms) {
            break;
        }
        strip_penalized_impl(&mut w, &mut terms)?;
        if let Some(f) = observe.as_deref_mut() {
            f(&w);
        }
        if terms.len() == before {
            break;
        }
    }

    sweep_rows(&mut w, ArgPattern::YX, &mut terms, observe.as_deref_mut())?;
    let mut wt = w.transpose();
    let mut column_terms = Vec::new();
    match observe {
        Some(f) => {
            let mut untransposed = |s: &BinaryTable| f(&s.transpose());
            sweep_rows(&mut wt, ArgPattern::YX, &mut column_terms, Some(&mut untransposed))?;
        }
        None => sweep_rows(&mut wt, ArgPattern::YX, &mut column_terms, None)?,
    }
    terms.extend(column_terms.into_iter().map(transposed_term));

    if let Some(e) = wt.values().iter().find(|e| !e.is_zero()) {
        return Err(Error::PreconditionViolated(format!(
            "decomposition left a non-zero residual entry {e}"
        )));
    }
    let decomposition = Decomposition { terms, size: m };
    debug_assert_eq!(&decomposition.reconstruct(), t, "decomposition round trip");
    Ok(decomposition)
}
