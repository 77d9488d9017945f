//! Exact rational vectors, vector commensurability, and minimal integral
//! class representatives.
//!
//! Vectors `v` and `w` are commensurable when they have the same length and
//! `Kv = Lw` for some non-zero integers `K`, `L`; equivalently `w` is a
//! non-zero rational multiple of `v` (with the all-zero vector commensurable
//! only to itself). Each non-trivial class has a unique integral element
//! whose entries have gcd 1 and whose first non-zero entry is positive.

use crate::{Error, Result};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use std::fmt;

/// Exact rational, re-exported for convenience.
pub type Rat = BigRational;

/// Builds a rational from an integer pair. Panics on zero denominator.
pub fn rat(n: i64, d: i64) -> Rat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    BigRational::from(BigInt::from(n))
}

/// Canonical display: `p` when the denominator is 1, else `p/q`.
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p` or `p/q`.
pub fn rat_from_str(s: &str) -> Result<Rat> {
    let s = s.trim();
    let parse_int = |t: &str| -> Result<BigInt> {
        t.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::InvalidInput(format!("bad rational `{s}`")))
    };
    match s.split_once('/') {
        None => Ok(BigRational::from(parse_int(s)?)),
        Some((n, d)) => {
            let den = parse_int(d)?;
            if den.is_zero() {
                return Err(Error::InvalidInput(format!("zero denominator in `{s}`")));
            }
            Ok(BigRational::new(parse_int(n)?, den))
        }
    }
}

// ============================================================================
// QVector
// ============================================================================

/// A non-empty vector of exact rationals.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QVector(Vec<Rat>);

impl fmt::Debug for QVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_display())
    }
}

impl QVector {
    pub fn new(entries: Vec<Rat>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidInput("QVector must have length >= 1".into()));
        }
        Ok(QVector(entries))
    }

    /// Convenience constructor from `(numerator, denominator)` pairs.
    pub fn from_pairs(pairs: &[(i64, i64)]) -> Self {
        QVector(pairs.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn entries(&self) -> &[Rat] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|e| e.is_zero())
    }

    /// Sum of the entries.
    pub fn entry_sum(&self) -> Rat {
        self.0.iter().fold(Rat::zero(), |acc, e| acc + e)
    }

    pub fn scale(&self, c: &Rat) -> QVector {
        QVector(self.0.iter().map(|e| e * c).collect())
    }

    /// Entry-wise sum; lengths must agree.
    pub fn add(&self, other: &QVector) -> Result<QVector> {
        if self.len() != other.len() {
            return Err(Error::InvalidInput("length mismatch in vector sum".into()));
        }
        Ok(QVector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        ))
    }

    /// Returns a copy sorted in non-increasing order.
    pub fn sorted_non_increasing(&self) -> QVector {
        let mut v = self.0.clone();
        v.sort();
        v.reverse();
        QVector(v)
    }

    pub fn to_display(&self) -> String {
        self.0
            .iter()
            .map(rat_to_string)
            .collect::<Vec<_>>()
            .join(", ")
    }
}

// ============================================================================
// Commensurability
// ============================================================================

/// True iff `v` and `w` have equal length and `Kv = Lw` for non-zero
/// integers `K`, `L`.
pub fn commensurable(v: &QVector, w: &QVector) -> bool {
    if v.len() != w.len() {
        return false;
    }
    // Zero entries must sit in the same positions; then one non-zero ratio
    // determines the multiple.
    let mut ratio: Option<Rat> = None;
    for (a, b) in v.entries().iter().zip(w.entries()) {
        match (a.is_zero(), b.is_zero()) {
            (true, true) => continue,
            (true, false) | (false, true) => return false,
            (false, false) => {
                let r = b / a;
                match &ratio {
                    None => ratio = Some(r),
                    Some(r0) => {
                        if *r0 != r {
                            return false;
                        }
                    }
                }
            }
        }
    }
    // Both all-zero: commensurable (K = L = 1 works).
    true
}

/// Independent brute-force oracle: all cross products `v_i w_j = v_j w_i`
/// plus positional zero agreement. Used by tests to check `commensurable`.
pub fn commensurable_cross_product_oracle(v: &QVector, w: &QVector) -> bool {
    if v.len() != w.len() {
        return false;
    }
    for (a, b) in v.entries().iter().zip(w.entries()) {
        if a.is_zero() != b.is_zero() {
            return false;
        }
    }
    let n = v.len();
    for i in 0..n {
        for j in 0..n {
            if &v.entries()[i] * &w.entries()[j] != &v.entries()[j] * &w.entries()[i] {
                return false;
            }
        }
    }
    true
}

// ============================================================================
// Minimal integral element
// ============================================================================

/// The minimal integral element of a commensurability class: integer
/// entries, gcd 1, first non-zero entry positive.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassRep {
    v0: Vec<BigInt>,
}

impl fmt::Debug for ClassRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}]",
            self.v0
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        )
    }
}

impl ClassRep {
    pub fn entries(&self) -> &[BigInt] {
        &self.v0
    }

    pub fn to_qvector(&self) -> QVector {
        QVector(self.v0.iter().map(|x| BigRational::from(x.clone())).collect())
    }
}

/// Computes the minimal integral element `v0` of the class of `v` together
/// with the unique rational `R` with `v = R * v0`. Errors on the zero
/// vector, which has no class representative.
pub fn minimal_integral(v: &QVector) -> Result<(ClassRep, Rat)> {
    if v.is_zero() {
        return Err(Error::InvalidInput(
            "no commensurability class representative for the zero vector".into(),
        ));
    }
    // Clear denominators.
    let mut lcm = BigInt::one();
    for e in v.entries() {
        lcm = num::integer::lcm(lcm, e.denom().clone());
    }
    let ints: Vec<BigInt> = v
        .entries()
        .iter()
        .map(|e| e.numer() * (&lcm / e.denom()))
        .collect();
    // Divide by the gcd of absolute values.
    let mut g = BigInt::zero();
    for x in &ints {
        g = num::integer::gcd(g, x.abs());
    }
    let mut v0: Vec<BigInt> = ints.iter().map(|x| x / &g).collect();
    // Fix the sign of the first non-zero entry.
    let first = v0.iter().find(|x| !x.is_zero()).expect("non-zero vector");
    if first.is_negative() {
        for x in &mut v0 {
            *x = -x.clone();
        }
    }
    let rep = ClassRep { v0 };
    // v = R * v0 with R read off at the first non-zero position.
    let pos = v
        .entries()
        .iter()
        .position(|e| !e.is_zero())
        .expect("non-zero vector");
    let r = &v.entries()[pos] / BigRational::from(rep.v0[pos].clone());
    debug_assert_eq!(rep.to_qvector().scale(&r), *v);
    Ok((rep, r))
}

// ============================================================================
// Class grouping / multiset matching
// ============================================================================

/// One commensurability class appearing among two indexed families of
/// vectors, with the member indices on each side.
#[derive(Clone, Debug)]
pub struct ClassGroup {
    pub rep: ClassRep,
    pub xs_indices: Vec<usize>,
    pub ys_indices: Vec<usize>,
}

/// Groups `xs` and `ys` by commensurability class. Classes are sorted by
/// their minimal integral representative so output is deterministic.
pub fn class_grouping(xs: &[QVector], ys: &[QVector]) -> Result<Vec<ClassGroup>> {
    let mut groups: Vec<ClassGroup> = Vec::new();
    let mut place = |v: &QVector, idx: usize, side: usize, groups: &mut Vec<ClassGroup>| -> Result<()> {
        let (rep, _) = minimal_integral(v)?;
        for g in groups.iter_mut() {
            if g.rep == rep {
                if side == 0 {
                    g.xs_indices.push(idx);
                } else {
                    g.ys_indices.push(idx);
                }
                return Ok(());
            }
        }
        let mut g = ClassGroup {
            rep,
            xs_indices: vec![],
            ys_indices: vec![],
        };
        if side == 0 {
            g.xs_indices.push(idx);
        } else {
            g.ys_indices.push(idx);
        }
        groups.push(g);
        Ok(())
    };
    for (i, v) in xs.iter().enumerate() {
        place(v, i, 0, &mut groups)?;
    }
    for (i, v) in ys.iter().enumerate() {
        place(v, i, 1, &mut groups)?;
    }
    groups.sort_by(|a, b| a.rep.cmp(&b.rep));
    Ok(groups)
}

/// Matches the *sets* of commensurability classes of `xs` and `ys`:
/// `Some(groups)` iff every class occurring on one side occurs on the
/// other. The per-class index sets are exposed for downstream use.
pub fn class_multiset_match(xs: &[QVector], ys: &[QVector]) -> Result<Option<Vec<ClassGroup>>> {
    let groups = class_grouping(xs, ys)?;
    let matched = groups
        .iter()
        .all(|g| !g.xs_indices.is_empty() && !g.ys_indices.is_empty());
    Ok(if matched { Some(groups) } else { None })
}

// ============================================================================
// Tests
// ============================================================================

#[cfg(test)]
mod tests {
    use super::*;

    fn qv(pairs: &[(i64, i64)]) -> QVector {
        QVector::from_pairs(pairs)
    }

    #[test]
    fn commensurable_paper_examples() {
        // w and w' for the second pair of graphs in the conditions figure.
        let w = qv(&[(-1, 2), (-1, 1), (-1, 1), (-2, 1)]);
        let wp = qv(&[(-3, 4), (-3, 2), (-3, 2), (-3, 1)]);
        assert!(commensurable(&w, &wp));
        // u and v are not commensurable.
        let u = qv(&[(-1, 4), (-1, 4), (-1, 2)]);
        let v = qv(&[(-1, 4), (-1, 2), (-1, 2)]);
        assert!(!commensurable(&u, &v));
        assert!(commensurable(&v, &v));
    }

    #[test]
    fn commensurable_sign_and_zero_handling() {
        let a = qv(&[(1, 1), (-2, 1)]);
        let b = qv(&[(-3, 1), (6, 1)]);
        assert!(commensurable(&a, &b)); // negative multiple allowed
        let z2 = qv(&[(0, 1), (0, 1)]);
        assert!(commensurable(&z2, &z2));
        assert!(!commensurable(&z2, &a));
        assert!(!commensurable(&qv(&[(0, 1), (1, 1)]), &qv(&[(1, 1), (0, 1)])));
        assert!(!commensurable(&a, &qv(&[(1, 1), (-2, 1), (0, 1)])));
    }

    #[test]
    fn minimal_integral_examples() {
        let v = qv(&[(-1, 4), (-1, 4), (-1, 2), (-3, 4)]);
        let (rep, r) = minimal_integral(&v).unwrap();
        let want: Vec<BigInt> = [1, 1, 2, 3].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(rep.entries(), &want[..]);
        assert_eq!(r, rat(-1, 4));

        let (rep, r) = minimal_integral(&qv(&[(2, 1), (4, 1)])).unwrap();
        assert_eq!(rep.entries(), &[BigInt::from(1), BigInt::from(2)][..]);
        assert_eq!(r, rat_int(2));

        let (rep, r) = minimal_integral(&qv(&[(-5, 4), (-5, 4), (-5, 2)])).unwrap();
        let want: Vec<BigInt> = [1, 1, 2].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(rep.entries(), &want[..]);
        assert_eq!(r, rat(-5, 4));

        assert!(minimal_integral(&qv(&[(0, 1)])).is_err());
    }

    #[test]
    fn class_match_examples() {
        let u = qv(&[(-1, 4), (-1, 4), (-1, 2)]);
        let v = qv(&[(-1, 4), (-1, 2), (-1, 2)]);
        let u4 = u.scale(&rat_int(4));
        let v2 = v.scale(&rat_int(2));
        // {u, u, v} vs {4u, 2v}: classes match, with index sets as stated.
        let m = class_multiset_match(
            &[u.clone(), u.clone(), v.clone()],
            &[u4.clone(), v2.clone()],
        )
        .unwrap()
        .expect("classes should match");
        assert_eq!(m.len(), 2);
        let cu = m.iter().find(|g| g.xs_indices == vec![0, 1]).unwrap();
        assert_eq!(cu.ys_indices, vec![0]);
        // {u} vs {v}: no match.
        assert!(class_multiset_match(&[u.clone()], &[v.clone()])
            .unwrap()
            .is_none());
        // {} vs {}: trivially matches.
        assert!(class_multiset_match(&[], &[]).unwrap().is_some());
    }

    #[test]
    fn rational_string_round_trip() {
        for s in ["-7/4", "2", "0", "-3", "5/6"] {
            let r = rat_from_str(s).unwrap();
            assert_eq!(rat_to_string(&r), s);
        }
        assert!(rat_from_str("1/0").is_err());
        assert!(rat_from_str("x").is_err());
    }
}
