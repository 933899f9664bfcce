//! Exact rational plane geometry: 2-vectors, lattices, bases.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Exact rational 2-vector.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QV {
    pub x: Q,
    pub y: Q,
}

impl fmt::Debug for QV {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl QV {
    pub fn new(x: Q, y: Q) -> Self {
        QV { x, y }
    }

    pub fn zero() -> Self {
        QV::new(Q::zero(), Q::zero())
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        QV::new(q(x), q(y))
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn add(&self, o: &QV) -> QV {
        QV::new(&self.x + &o.x, &self.y + &o.y)
    }

    pub fn sub(&self, o: &QV) -> QV {
        QV::new(&self.x - &o.x, &self.y - &o.y)
    }

    pub fn neg(&self) -> QV {
        QV::new(-self.x.clone(), -self.y.clone())
    }

    pub fn scale(&self, c: &Q) -> QV {
        QV::new(&self.x * c, &self.y * c)
    }

    pub fn dot(&self, o: &QV) -> Q {
        &self.x * &o.x + &self.y * &o.y
    }

    pub fn cross(&self, o: &QV) -> Q {
        &self.x * &o.y - &self.y * &o.x
    }

    pub fn half(&self) -> QV {
        self.scale(&qr(1, 2))
    }

    /// Componentwise product with a diagonal matrix diag(a, b).
    pub fn diag(&self, a: &Q, b: &Q) -> QV {
        QV::new(&self.x * a, &self.y * b)
    }
}

/// Basis of a rank-2 lattice in the plane, kept Lagrange-reduced with
/// positive determinant and a canonical sign/order choice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeBasis {
    pub b1: QV,
    pub b2: QV,
}

impl LatticeBasis {
    pub fn det(&self) -> Q {
        self.b1.cross(&self.b2)
    }

    /// Canonical Lagrange-reduced basis of the integer span of `gens`.
    /// Errors if the span has rank < 2.
    pub fn from_generators(gens: &[QV]) -> Result<LatticeBasis> {
        let nz: Vec<&QV> = gens.iter().filter(|v| !v.is_zero()).collect();
        let mut basis: Vec<QV> = Vec::new();
        for g in nz {
            basis.push(g.clone());
            basis = span_basis(&basis)?;
        }
        if basis.len() < 2 {
            return Err(Error::NoLattice);
        }
        let (a, b) = lagrange_reduce(basis[0].clone(), basis[1].clone());
        Ok(Self::canonicalize(a, b))
    }

    /// Flip each vector into the half plane {x > 0} u {x = 0, y > 0},
    /// order the pair so det > 0, tie-break lexicographically.
    fn canonicalize(a: QV, b: QV) -> LatticeBasis {
        let fix = |v: QV| -> QV {
            if v.x.is_negative() || (v.x.is_zero() && v.y.is_negative()) {
                v.neg()
            } else {
                v
            }
        };
        let a = fix(a);
        let b = fix(b);
        let (mut b1, mut b2) = if (&a.x, &a.y) <= (&b.x, &b.y) { (a, b) } else { (b, a) };
        if b1.cross(&b2).is_negative() {
            std::mem::swap(&mut b1, &mut b2);
        }
        LatticeBasis { b1, b2 }
    }

    /// Same lattice as subgroups of the plane.
    pub fn same_lattice(&self, other: &LatticeBasis) -> bool {
        hnf_key(self) == hnf_key(other)
    }

    /// Does the lattice contain `v`?
    pub fn contains(&self, v: &QV) -> bool {
        let d = self.det();
        let a = v.cross(&self.b2) / &d;
        let b = self.b1.cross(v) / &d;
        a.is_integer() && b.is_integer()
    }

    /// Coordinates of `v` in this basis (exact).
    pub fn coords(&self, v: &QV) -> QV {
        let d = self.det();
        QV::new(v.cross(&self.b2) / &d, self.b1.cross(v) / d)
    }

    pub fn from_coords(&self, c: &QV) -> QV {
        self.b1.scale(&c.x).add(&self.b2.scale(&c.y))
    }

    /// A basis of the same lattice with both vectors in the closed first
    /// quadrant, searched over small unimodular combinations.
    pub fn first_quadrant(&self) -> Result<LatticeBasis> {
        let nonneg = |v: &QV| !v.x.is_negative() && !v.y.is_negative();
        let range = 6i64;
        let mut cands: Vec<QV> = Vec::new();
        for a in -range..=range {
            for b in -range..=range {
                if a == 0 && b == 0 {
                    continue;
                }
                let v = self.b1.scale(&q(a)).add(&self.b2.scale(&q(b)));
                if nonneg(&v) {
                    cands.push(v);
                }
            }
        }
        cands.sort();
        let target = self.det().abs();
        for i in 0..cands.len() {
            for j in 0..cands.len() {
                if i == j {
                    continue;
                }
                let d = cands[i].cross(&cands[j]);
                if d.abs() == target && d.is_positive() {
                    return Ok(LatticeBasis { b1: cands[i].clone(), b2: cands[j].clone() });
                }
            }
        }
        Err(Error::Invariant("no first-quadrant basis in search window".into()))
    }
}

/// Hermite-style canonical key: scale to an integer lattice, row-HNF, rescale.
fn hnf_key(basis: &LatticeBasis) -> (Q, Q, Q, Q) {
    let mut den = BigInt::one();
    for v in [&basis.b1, &basis.b2] {
        den = num_integer::lcm(den.clone(), v.x.denom().clone());
        den = num_integer::lcm(den, v.y.denom().clone());
    }
    let scale = Q::from_integer(den);
    let iv = |v: &QV| -> (BigInt, BigInt) {
        let s = v.scale(&scale);
        (s.x.to_integer(), s.y.to_integer())
    };
    let rows = vec![iv(&basis.b1), iv(&basis.b2)];
    let h = hnf_2xn(rows);
    let unscale = |n: BigInt| Q::from_integer(n) / &scale;
    (unscale(h[0].0.clone()), unscale(h[0].1.clone()), unscale(h[1].0.clone()), unscale(h[1].1.clone()))
}

/// Row HNF of a full-rank list of 2D integer rows.
fn hnf_2xn(mut rows: Vec<(BigInt, BigInt)>) -> Vec<(BigInt, BigInt)> {
    use num_integer::Integer;
    // Euclid on the first column.
    loop {
        rows.sort_by(|a, b| a.0.abs().cmp(&b.0.abs()));
        rows.reverse();
        let nz: Vec<usize> = (0..rows.len()).filter(|&i| !rows[i].0.is_zero()).collect();
        if nz.len() <= 1 {
            break;
        }
        let (i, j) = (nz[0], nz[1]);
        let qq = rows[i].0.div_floor(&rows[j].0);
        rows[i] = (&rows[i].0 - &qq * &rows[j].0, &rows[i].1 - &qq * &rows[j].1);
    }
    let mut pivot = rows.iter().find(|r| !r.0.is_zero()).cloned().expect("rank 2 lattice");
    if pivot.0.is_negative() {
        pivot = (-pivot.0, -pivot.1);
    }
    // gcd of the remaining second column
    let mut g = BigInt::zero();
    for r in &rows {
        if r.0.is_zero() {
            g = num_integer::gcd(g, r.1.clone());
        }
    }
    let g = g.abs();
    assert!(!g.is_zero(), "rank deficient lattice");
    let red = pivot.1.mod_floor(&g);
    vec![(pivot.0, red), (BigInt::zero(), g)]
}

/// Reduce a generating set to at most two independent vectors spanning the
/// same subgroup (via the canonical HNF when rank is 2).
fn span_basis(gens: &[QV]) -> Result<Vec<QV>> {
    if gens.len() <= 1 {
        return Ok(gens.to_vec());
    }
    // rank?
    let mut rank1 = true;
    for i in 1..gens.len() {
        if !gens[0].cross(&gens[i]).is_zero() {
            rank1 = false;
            break;
        }
    }
    if rank1 {
        // 1-D: gcd along the line
        let base = gens[0].clone();
        let mut t = Q::zero();
        for g in gens {
            let c = if !base.x.is_zero() { &g.x / &base.x } else { &g.y / &base.y };
            t = rational_gcd(&t, &c);
        }
        return Ok(vec![base.scale(&t)]);
    }
    let mut den = BigInt::one();
    for v in gens {
        den = num_integer::lcm(den.clone(), v.x.denom().clone());
        den = num_integer::lcm(den, v.y.denom().clone());
    }
    let scale = Q::from_integer(den);
    let rows: Vec<(BigInt, BigInt)> = gens
        .iter()
        .map(|v| {
            let s = v.scale(&scale);
            (s.x.to_integer(), s.y.to_integer())
        })
        .collect();
    let h = hnf_2xn(rows);
    let unscale = |p: &(BigInt, BigInt)| QV::new(Q::from_integer(p.0.clone()) / &scale, Q::from_integer(p.1.clone()) / &scale);
    Ok(vec![unscale(&h[0]), unscale(&h[1])])
}

/// gcd on Q: gcd(a/b, c/d) = gcd(ad, cb)/bd.
fn rational_gcd(a: &Q, b: &Q) -> Q {
    if a.is_zero() {
        return b.abs();
    }
    if b.is_zero() {
        return a.abs();
    }
    let num = num_integer::gcd(a.numer() * b.denom(), b.numer() * a.denom());
    Q::new(num, a.denom() * b.denom())
}

fn lagrange_reduce(mut a: QV, mut b: QV) -> (QV, QV) {
    if a.dot(&a) > b.dot(&b) {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        let mu = (b.dot(&a) / a.dot(&a)).round();
        let b2 = b.sub(&a.scale(&mu));
        if b2.dot(&b2) >= a.dot(&a) {
            return (a, b2);
        }
        b = a;
        a = b2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lattice_canonical_positive_reps() {
        let l = LatticeBasis::from_generators(&[
            QV::new(q(-2), q(0)),
            QV::new(q(0), qr(-2, 3)),
            QV::new(q(2), qr(2, 3)),
        ])
        .unwrap();
        assert_eq!(l.b1, QV::new(q(2), q(0)));
        assert_eq!(l.b2, QV::new(q(0), qr(2, 3)));
        assert!(l.det().is_positive());
    }

    #[test]
    fn lattice_equality_is_basis_independent() {
        let a = LatticeBasis::from_generators(&[QV::from_ints(2, 0), QV::new(q(1), qr(1, 3))]).unwrap();
        let b = LatticeBasis::from_generators(&[
            QV::new(q(1), qr(1, 3)),
            QV::new(q(1), qr(-1, 3)),
        ])
        .unwrap();
        assert!(a.same_lattice(&b));
        let c = LatticeBasis::from_generators(&[QV::from_ints(2, 0), QV::new(q(0), qr(2, 3))]).unwrap();
        assert!(!a.same_lattice(&c));
    }

    #[test]
    fn contains_and_coords() {
        let l = LatticeBasis::from_generators(&[QV::from_ints(2, 0), QV::new(q(1), qr(1, 3))]).unwrap();
        assert!(l.contains(&QV::new(q(0), qr(2, 3))));
        assert!(!l.contains(&QV::new(q(1), q(0))));
        let v = QV::new(q(7), qr(5, 3));
        let c = l.coords(&v);
        assert_eq!(l.from_coords(&c), v);
    }

    #[test]
    fn first_quadrant_basis_exists_for_mixed_signs() {
        let l = LatticeBasis::from_generators(&[QV::from_ints(1, 1), QV::from_ints(1, -1)]).unwrap();
        let p = l.first_quadrant().unwrap();
        assert!(!p.b1.x.is_negative() && !p.b1.y.is_negative());
        assert!(!p.b2.x.is_negative() && !p.b2.y.is_negative());
        assert!(p.b1.cross(&p.b2).abs() == l.det().abs());
        assert!(l.same_lattice(&LatticeBasis::from_generators(&[p.b1.clone(), p.b2.clone()]).unwrap()));
    }
}
