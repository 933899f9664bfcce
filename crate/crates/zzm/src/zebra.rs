//! Zebra polynomials over F2 and their evaluation on point grids.
//!
//! A zebra with frequency `v` is `floor(2 x . v) mod 2`. Polynomials are sums
//! of products of zebras `z_{jk}` with frequency `k * v_j`, where the six base
//! directions, rescaled to integer vectors, are given by [`RESCALED`].

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::geom::{Q, QV};
use crate::{Error, Result};

/// Integer base frequency vectors, index 1..=6 at positions 0..=5.
pub const RESCALED: [(i64, i64); 6] = [(-3, 1), (-1, 1), (0, 2), (1, 1), (3, 1), (2, 0)];

/// One zebra factor: direction index 1..=6 and a positive multiplier.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Frequency {
    pub direction_index: u8,
    pub multiplier: u32,
}

impl Frequency {
    pub fn vector(&self) -> (i64, i64) {
        let (x, y) = RESCALED[(self.direction_index - 1) as usize];
        (x * self.multiplier as i64, y * self.multiplier as i64)
    }
}

/// A nonzero F2 polynomial in zebras: frequency matrix `V` (distinct columns,
/// first-use order) and 0/1 monomial matrix `M` (columns are monomials).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZebraPolynomial {
    pub frequencies: Vec<(i64, i64)>,
    pub monomials: Vec<Vec<bool>>,
    pub source_text: String,
}

impl ZebraPolynomial {
    pub fn n_frequencies(&self) -> usize {
        self.frequencies.len()
    }

    pub fn n_monomials(&self) -> usize {
        self.monomials.len()
    }

    /// Number of linearly independent frequency directions (0, 1 or 2).
    pub fn direction_rank(&self) -> usize {
        for (i, a) in self.frequencies.iter().enumerate() {
            for b in &self.frequencies[i + 1..] {
                if a.0 * b.1 - a.1 * b.0 != 0 {
                    return 2;
                }
            }
        }
        usize::from(!self.frequencies.is_empty())
    }

    /// Evaluate at exact rational points; 1 = black, 0 = white.
    ///
    /// This is the matrix pipeline `(not((not(floor(2XV) mod 2)) M) 1) mod 2`
    /// with `not(r) = 1` iff `r = 0`, carried out in exact arithmetic.
    pub fn evaluate(&self, points: &[QV]) -> Vec<u8> {
        points.iter().map(|p| self.evaluate_one(p)).collect()
    }

    pub fn evaluate_one(&self, p: &QV) -> u8 {
        let zeb: Vec<u8> = self
            .frequencies
            .iter()
            .map(|&(vx, vy)| {
                let t = (&p.x * Q::from_integer(BigInt::from(vx))
                    + &p.y * Q::from_integer(BigInt::from(vy)))
                    * Q::from_integer(BigInt::from(2));
                (t.floor().to_integer().mod_floor(&BigInt::from(2)))
                    .to_u8()
                    .unwrap()
            })
            .collect();
        let not_z: Vec<u8> = zeb.iter().map(|&z| 1 - z).collect();
        let mono_dead: Vec<u8> = self
            .monomials
            .iter()
            .map(|col| {
                let s: u32 = col
                    .iter()
                    .zip(&not_z)
                    .map(|(&used, &nz)| if used { nz as u32 } else { 0 })
                    .sum();
                u8::from(s == 0)
            })
            .collect();
        let total: u32 = mono_dead.iter().map(|&m| m as u32).sum();
        (total % 2) as u8
    }

    /// Evaluate on integer points `p/scale`; exact via floor division.
    pub fn evaluate_scaled(&self, points: &[(i64, i64)], scale: i64) -> Vec<u8> {
        assert!(scale > 0);
        points
            .iter()
            .map(|&(px, py)| {
                let zeb: Vec<u8> = self
                    .frequencies
                    .iter()
                    .map(|&(vx, vy)| (2 * (px * vx + py * vy)).div_euclid(scale).rem_euclid(2) as u8)
                    .collect();
                let mut total = 0u32;
                for col in &self.monomials {
                    let all_one = col
                        .iter()
                        .zip(&zeb)
                        .all(|(&used, &z)| !used || z == 1);
                    if all_one {
                        total += 1;
                    }
                }
                (total % 2) as u8
            })
            .collect()
    }
}

/// Parse a polynomial: terms joined by `+`, factors joined by `*`, each
/// factor `z<j><k>` with a single digit `j` in 1..=6 and a positive integer
/// `k`. Whitespace is ignored. Duplicate monomials cancel in pairs.
pub fn parse_polynomial(text: &str) -> Result<ZebraPolynomial> {
    let mut factors_per_monomial: Vec<Vec<Frequency>> = Vec::new();
    let bytes: Vec<(usize, char)> = text.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
    let mut i = 0;
    let syntax = |pos: usize, msg: &str| Error::Syntax { position: pos, message: msg.into() };
    loop {
        let mut term: Vec<Frequency> = Vec::new();
        loop {
            let (pos, c) = *bytes
                .get(i)
                .ok_or_else(|| syntax(text.len(), "expected factor 'z<j><k>'"))?;
            if c != 'z' {
                return Err(syntax(pos, "expected 'z'"));
            }
            i += 1;
            let (jpos, jc) = *bytes.get(i).ok_or_else(|| syntax(text.len(), "expected direction digit"))?;
            let j = jc.to_digit(10).ok_or_else(|| syntax(jpos, "expected direction digit"))?;
            if !(1..=6).contains(&j) {
                return Err(syntax(jpos, "direction index must be in 1..6"));
            }
            i += 1;
            let kstart = i;
            let mut k: u64 = 0;
            while let Some(&(_, kc)) = bytes.get(i) {
                match kc.to_digit(10) {
                    Some(d) => {
                        k = k * 10 + d as u64;
                        if k > u32::MAX as u64 {
                            return Err(syntax(bytes[kstart].0, "multiplier too large"));
                        }
                        i += 1;
                    }
                    None => break,
                }
            }
            if i == kstart {
                let pos = bytes.get(kstart).map(|&(p, _)| p).unwrap_or(text.len());
                return Err(syntax(pos, "expected multiplier digits"));
            }
            if k == 0 {
                return Err(syntax(bytes[kstart].0, "multiplier must be positive"));
            }
            let f = Frequency { direction_index: j as u8, multiplier: k as u32 };
            if !term.contains(&f) {
                term.push(f); // z*z = z over F2
            }
            match bytes.get(i) {
                Some(&(_, '*')) => {
                    i += 1;
                    continue;
                }
                _ => break,
            }
        }
        term.sort();
        factors_per_monomial.push(term);
        match bytes.get(i) {
            Some(&(_, '+')) => {
                i += 1;
                continue;
            }
            Some(&(pos, _)) => return Err(syntax(pos, "expected '+' or '*'")),
            None => break,
        }
    }
    // cancel duplicate monomials in pairs (F2)
    let mut reduced: Vec<Vec<Frequency>> = Vec::new();
    for term in factors_per_monomial {
        if let Some(p) = reduced.iter().position(|t| *t == term) {
            reduced.remove(p);
        } else {
            reduced.push(term);
        }
    }
    if reduced.is_empty() {
        return Err(Error::ZeroPolynomial);
    }
    let mut frequencies: Vec<(i64, i64)> = Vec::new();
    for term in &reduced {
        for f in term {
            let v = f.vector();
            if !frequencies.contains(&v) {
                frequencies.push(v);
            }
        }
    }
    let monomials: Vec<Vec<bool>> = reduced
        .iter()
        .map(|term| {
            let used: Vec<(i64, i64)> = term.iter().map(|f| f.vector()).collect();
            frequencies.iter().map(|v| used.contains(v)).collect()
        })
        .collect();
    Ok(ZebraPolynomial { frequencies, monomials, source_text: text.trim().to_string() })
}

/// Sampling the same function one monomial and one factor at a time; used as
/// an independent oracle for `evaluate`.
pub fn evaluate_naive(poly: &ZebraPolynomial, p: &QV) -> u8 {
    let mut acc = 0u8;
    for col in &poly.monomials {
        let mut prod = 1u8;
        for (fi, &used) in col.iter().enumerate() {
            if !used {
                continue;
            }
            let (vx, vy) = poly.frequencies[fi];
            let t = Q::from_integer(BigInt::from(2))
                * (&p.x * Q::from_integer(BigInt::from(vx)) + &p.y * Q::from_integer(BigInt::from(vy)));
            let z = t.floor().to_integer().mod_floor(&BigInt::from(2)).to_u8().unwrap();
            prod &= z;
        }
        acc ^= prod;
    }
    acc
}
