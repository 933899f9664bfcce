//! Exact extraction of the tiling's edge structure on a finite patch, and the
//! lattice of translation symmetries.
//!
//! All work happens on the integer grid `(1/K) Z^2` where `K` is the least
//! common multiple of the intersection denominators `2|det(v,v')|/gcd`; patch
//! points are scanned in the order `a + b*sqrt(2)`.

use num_traits::Signed;
use serde_json::json;

use crate::geom::{q, Q, QV, LatticeBasis};
use crate::zebra::ZebraPolynomial;
use crate::{Error, Result};

/// Oriented boundary interval between a black and a white region; walking
/// source -> target keeps black on the right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeSegment {
    pub midpoint: QV,
    pub source: QV,
    pub target: QV,
    pub vector: QV,
}

impl EdgeSegment {
    pub fn to_json(&self) -> serde_json::Value {
        let pair = |v: &QV| {
            json!([
                [v.x.numer().to_string(), v.x.denom().to_string()],
                [v.y.numer().to_string(), v.y.denom().to_string()]
            ])
        };
        json!({ "mid": pair(&self.midpoint), "src": pair(&self.source),
                "tgt": pair(&self.target), "vec": pair(&self.vector) })
    }
}

/// Segment in 2K-scaled integer coordinates, oriented black-on-right.
pub(crate) type ScaledSeg = ((i64, i64), (i64, i64));

/// Denominator-clearing constant of the line arrangement.
pub fn scale_constant(poly: &ZebraPolynomial) -> i64 {
    let mut k: i64 = 1;
    for (i, a) in poly.frequencies.iter().enumerate() {
        for b in &poly.frequencies[i + 1..] {
            let det = a.0 * b.1 - a.1 * b.0;
            if det == 0 {
                continue;
            }
            let g = gcd4(a.0, a.1, b.0, b.1);
            k = num_integer::lcm(k, 2 * det.abs() / g);
        }
    }
    k
}

fn gcd4(a: i64, b: i64, c: i64, d: i64) -> i64 {
    let g = num_integer::gcd(num_integer::gcd(a.abs(), b.abs()), num_integer::gcd(c.abs(), d.abs()));
    if g == 0 {
        1
    } else {
        g
    }
}

/// `a + b*sqrt(2) < c + d*sqrt(2)`, exactly.
fn sqrt2_less(a: i64, b: i64, c: i64, d: i64) -> bool {
    let l = a - c;
    let r = d - b;
    if r >= 0 {
        if l < 0 {
            return true;
        }
        if l == 0 {
            return r > 0;
        }
        l * l < 2 * r * r
    } else {
        if l >= 0 {
            return false;
        }
        l * l > 2 * r * r
    }
}

pub(crate) struct Patch {
    pub k: i64,
    pub n: i64,
    pub segs: Vec<ScaledSeg>,
}

impl Patch {
    pub fn to_edge_segments(&self) -> Vec<EdgeSegment> {
        let den = 2 * self.k;
        self.segs
            .iter()
            .map(|&((sx, sy), (tx, ty))| {
                let src = QV::new(Q::new(sx.into(), den.into()), Q::new(sy.into(), den.into()));
                let tgt = QV::new(Q::new(tx.into(), den.into()), Q::new(ty.into(), den.into()));
                EdgeSegment {
                    midpoint: src.add(&tgt).half(),
                    vector: tgt.sub(&src),
                    source: src,
                    target: tgt,
                }
            })
            .collect()
    }
}

/// Scan the patch `[0, n) x [0, n)` of the grid `(1/K) Z^2` and return the
/// deduplicated oriented boundary segments (2K-scaled integer coordinates).
pub(crate) fn scan_patch(poly: &ZebraPolynomial, n: i64) -> Result<Patch> {
    if poly.direction_rank() < 2 {
        return Err(Error::Degenerate(
            "fewer than two independent frequency directions; all faces are unbounded".into(),
        ));
    }
    let k = scale_constant(poly);
    let freqs = &poly.frequencies;
    let w_max = freqs.iter().map(|v| v.0.abs().max(v.1.abs())).max().unwrap().max(1);
    // candidate points: on >= 2 independent boundary lines
    let mut pts: Vec<(i64, i64)> = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let hits: Vec<&(i64, i64)> =
                freqs.iter().filter(|v| (2 * (a * v.0 + b * v.1)).rem_euclid(k) == 0).collect();
            let mut indep = false;
            'outer: for (i, u) in hits.iter().enumerate() {
                for w in &hits[i + 1..] {
                    if u.0 * w.1 - u.1 * w.0 != 0 {
                        indep = true;
                        break 'outer;
                    }
                }
            }
            if indep {
                pts.push((a, b));
            }
        }
    }
    if pts.is_empty() {
        return Err(Error::PatchTooSmall("no arrangement vertices in patch".into()));
    }
    pts.sort_by(|p, r| {
        if p == r {
            std::cmp::Ordering::Equal
        } else if sqrt2_less(p.0, p.1, r.0, r.1) {
            std::cmp::Ordering::Less
        } else {
            std::cmp::Ordering::Greater
        }
    });
    let mut segs: Vec<ScaledSeg> = Vec::new();
    let mut seen_pairs: std::collections::HashSet<((i64, i64), (i64, i64))> =
        std::collections::HashSet::new();
    for v in freqs {
        // group candidate points on each line of this family
        let mut lines: std::collections::HashMap<i64, Vec<(i64, i64)>> = std::collections::HashMap::new();
        for &p in &pts {
            let t = 2 * (p.0 * v.0 + p.1 * v.1);
            if t.rem_euclid(k) == 0 {
                lines.entry(t.div_euclid(k)).or_default().push(p);
            }
        }
        let dir = (-v.1, v.0);
        let mut line_keys: Vec<i64> = lines.keys().copied().collect();
        line_keys.sort_unstable();
        for c in line_keys {
            let mut plist = lines.remove(&c).unwrap();
            plist.sort_by_key(|p| p.0 * dir.0 + p.1 * dir.1);
            plist.dedup();
            for win in plist.windows(2) {
                let (a, b) = (win[0], win[1]);
                // unordered endpoint pair in 2K scale
                let pa = (2 * a.0, 2 * a.1);
                let pb = (2 * b.0, 2 * b.1);
                let key = if pa <= pb { (pa, pb) } else { (pb, pa) };
                if seen_pairs.contains(&key) {
                    continue;
                }
                let mid = QV::new(Q::new((a.0 + b.0).into(), (2 * k).into()), Q::new((a.1 + b.1).into(), (2 * k).into()));
                // offset small enough to stay inside the two adjacent faces
                let den = 8 * k * (v.0.abs() + v.1.abs()) * w_max;
                let off = QV::new(Q::new(v.0.into(), den.into()), Q::new(v.1.into(), den.into()));
                let plus = poly.evaluate_one(&mid.add(&off));
                let minus = poly.evaluate_one(&mid.sub(&off));
                if plus == minus {
                    continue;
                }
                // right-hand side of the direction d = (-v1, v0) is the +v side
                let (s, t) = if plus == 1 { (pa, pb) } else { (pb, pa) };
                seen_pairs.insert(key);
                segs.push((s, t));
            }
        }
    }
    if segs.is_empty() {
        return Err(Error::PatchTooSmall("no black/white boundaries in patch".into()));
    }
    Ok(Patch { k, n, segs })
}

/// Validated translation symmetries of the patch, as 2K-scaled integer
/// vectors. Candidates are midpoint differences against the first segment in
/// scan order; a candidate is accepted iff it maps every segment of the
/// central quarter window onto a segment of the patch, orientation included.
pub(crate) fn validated_translations(patch: &Patch) -> Vec<(i64, i64)> {
    let mut segs = patch.segs.clone();
    segs.sort_by(|x, y| {
        let mx = (x.0 .0 + x.1 .0, x.0 .1 + x.1 .1);
        let my = (y.0 .0 + y.1 .0, y.0 .1 + y.1 .1);
        if mx == my {
            std::cmp::Ordering::Equal
        } else if sqrt2_less(mx.0, mx.1, my.0, my.1) {
            std::cmp::Ordering::Less
        } else {
            std::cmp::Ordering::Greater
        }
    });
    let set: std::collections::HashSet<ScaledSeg> = segs.iter().copied().collect();
    let hi = 2 * (patch.n - 1);
    let (wlo, whi) = (hi / 4, 3 * hi / 4);
    let inner: Vec<ScaledSeg> = segs
        .iter()
        .copied()
        .filter(|s| [s.0 .0, s.0 .1, s.1 .0, s.1 .1].iter().all(|&c| wlo <= c && c <= whi))
        .collect();
    if inner.is_empty() {
        return vec![];
    }
    let first = segs[0];
    let fvec = (first.1 .0 - first.0 .0, first.1 .1 - first.0 .1);
    let fmid2 = (first.0 .0 + first.1 .0, first.0 .1 + first.1 .1);
    let mut cands: Vec<(i64, i64)> = Vec::new();
    for s in &segs {
        if (s.1 .0 - s.0 .0, s.1 .1 - s.0 .1) != fvec {
            continue;
        }
        let mid2 = (s.0 .0 + s.1 .0, s.0 .1 + s.1 .1);
        let d2 = (mid2.0 - fmid2.0, mid2.1 - fmid2.1);
        if d2.0 % 2 != 0 || d2.1 % 2 != 0 {
            continue;
        }
        let d = (d2.0 / 2, d2.1 / 2);
        if d == (0, 0) || d.0.abs() > hi / 4 || d.1.abs() > hi / 4 {
            continue;
        }
        if !cands.contains(&d) {
            cands.push(d);
        }
    }
    cands
        .into_iter()
        .filter(|&(tx, ty)| {
            inner.iter().all(|s| {
                let moved = ((s.0 .0 + tx, s.0 .1 + ty), (s.1 .0 + tx, s.1 .1 + ty));
                set.contains(&moved)
            })
        })
        .collect()
}

/// The tiling patch together with its translation lattice, grown until the
/// lattice fits well inside the window.
pub struct Arrangement {
    pub poly: ZebraPolynomial,
    pub k: i64,
    pub n: i64,
    pub segments: Vec<EdgeSegment>,
    pub(crate) patch: Patch,
    /// Lattice in the working frame of the scan.
    pub aut_working: LatticeBasis,
    /// The same lattice expressed in frequency units (multiplied by
    /// diag(4, 4/3)); this is the frame in which the base directions read as
    /// the integer vectors of [`crate::zebra::RESCALED`].
    pub aut: LatticeBasis,
}

/// Working frame -> frequency units.
pub fn to_frequency_units(v: &QV) -> QV {
    v.diag(&q(4), &Q::new(4.into(), 3.into()))
}

pub fn from_frequency_units(v: &QV) -> QV {
    v.diag(&Q::new(1.into(), 4.into()), &Q::new(3.into(), 4.into()))
}

impl Arrangement {
    /// Scan with automatic patch growth: start at N = 8K, double until a
    /// rank-2 lattice with reduced basis coordinates <= N/(3K) is validated,
    /// give up at N = 128K.
    pub fn compute(poly: &ZebraPolynomial) -> Result<Arrangement> {
        let k = scale_constant(poly);
        let mut n = 8 * k;
        loop {
            match Self::attempt(poly, n, k) {
                Ok(arr) => return Ok(arr),
                Err(e) => {
                    n *= 2;
                    if n > 128 * k {
                        return Err(match e {
                            Error::Degenerate(m) => Error::Degenerate(m),
                            _ => Error::NoLattice,
                        });
                    }
                }
            }
        }
    }

    fn attempt(poly: &ZebraPolynomial, n: i64, k: i64) -> Result<Arrangement> {
        let patch = scan_patch(poly, n)?;
        let trans = validated_translations(&patch);
        let gens: Vec<QV> = trans
            .iter()
            .map(|&(x, y)| QV::new(Q::new(x.into(), (2 * k).into()), Q::new(y.into(), (2 * k).into())))
            .collect();
        let basis = LatticeBasis::from_generators(&gens)?;
        let bound = Q::new((n - 1).into(), (3 * k).into());
        for v in [&basis.b1, &basis.b2] {
            if v.x.abs() > bound || v.y.abs() > bound {
                return Err(Error::PatchTooSmall("lattice basis exceeds window bound".into()));
            }
        }
        let aut = LatticeBasis::from_generators(&[
            to_frequency_units(&basis.b1),
            to_frequency_units(&basis.b2),
        ])?;
        Ok(Arrangement {
            poly: poly.clone(),
            k,
            n,
            segments: patch.to_edge_segments(),
            patch,
            aut_working: basis,
            aut,
        })
    }

    /// Grow the patch until the given sublattice basis (working frame) fits
    /// the window bound; returns a patch at least as large as the current one.
    pub(crate) fn patch_for(&self, basis: &LatticeBasis) -> Result<Patch> {
        let mut n = self.n;
        loop {
            let bound = Q::new((n - 1).into(), (3 * self.k).into());
            let fits = [&basis.b1, &basis.b2]
                .iter()
                .all(|v| v.x.abs() <= bound && v.y.abs() <= bound);
            if fits {
                return scan_patch(&self.poly, n);
            }
            n *= 2;
            if n > 1024 * self.k {
                return Err(Error::PatchTooSmall("sublattice too coarse for maximal patch".into()));
            }
        }
    }
}

/// Spec-level wrapper: extract the segment list on the automatically grown
/// patch.
pub fn extract_edges(poly: &ZebraPolynomial) -> Result<Vec<EdgeSegment>> {
    Ok(Arrangement::compute(poly)?.segments)
}

/// Spec-level wrapper: the automorphism lattice in frequency units.
pub fn automorphism_lattice(poly: &ZebraPolynomial) -> Result<LatticeBasis> {
    Ok(Arrangement::compute(poly)?.aut)
}

/// Strict convexity test for closed face cycles: every cycle must sum to
/// zero and wind with strictly uniform cross-product sign (positive for white
/// faces, negative for black ones).
pub fn check_convexity(white: &[Vec<QV>], black: &[Vec<QV>]) -> (bool, Vec<String>) {
    let mut bad = Vec::new();
    for (sign, faces, name) in [(1i8, white, "white"), (-1i8, black, "black")] {
        for (fi, cyc) in faces.iter().enumerate() {
            let mut sum = QV::zero();
            for v in cyc {
                sum = sum.add(v);
            }
            if !sum.is_zero() {
                bad.push(format!("{name} face {fi}: boundary does not close"));
                continue;
            }
            if cyc.len() < 3 {
                bad.push(format!("{name} face {fi}: fewer than three edges"));
                continue;
            }
            for i in 0..cyc.len() {
                let a = &cyc[i];
                let b = &cyc[(i + 1) % cyc.len()];
                let cr = a.cross(b);
                let ok = if sign > 0 { cr.is_positive() } else { cr.is_negative() };
                if !ok {
                    bad.push(format!("{name} face {fi}: non-convex corner at edge {i}"));
                    break;
                }
            }
        }
    }
    (bad.is_empty(), bad)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::qr;
    use crate::zebra::parse_polynomial;

    #[test]
    fn scale_constants() {
        assert_eq!(scale_constant(&parse_polynomial("z21+z41").unwrap()), 4);
        assert_eq!(scale_constant(&parse_polynomial("z21+z41+z61").unwrap()), 4);
        assert_eq!(
            scale_constant(&parse_polynomial("z11+z21+z31+z41+z51+z61").unwrap()),
            24
        );
        assert_eq!(
            scale_constant(&parse_polynomial("z21+z31+z41+z61+z31*z42*z61").unwrap()),
            8
        );
    }

    #[test]
    fn single_zebra_is_degenerate() {
        let p = parse_polynomial("z61").unwrap();
        assert!(matches!(extract_edges(&p), Err(Error::Degenerate(_))));
    }

    #[test]
    fn segments_have_consistent_fields_and_grid_vertices() {
        let p = parse_polynomial("z21+z41").unwrap();
        let arr = Arrangement::compute(&p).unwrap();
        let kq = q(arr.k);
        for s in &arr.segments {
            assert_eq!(s.vector, s.target.sub(&s.source));
            assert_eq!(s.midpoint, s.source.add(&s.target).half());
            assert!((s.source.scale(&kq)).x.is_integer());
            assert!((s.source.scale(&kq)).y.is_integer());
        }
        // no duplicate unordered endpoint pairs
        let mut pairs: Vec<(QV, QV)> = arr
            .segments
            .iter()
            .map(|s| {
                if (&s.source.x, &s.source.y) <= (&s.target.x, &s.target.y) {
                    (s.source.clone(), s.target.clone())
                } else {
                    (s.target.clone(), s.source.clone())
                }
            })
            .collect();
        let before = pairs.len();
        pairs.sort();
        pairs.dedup();
        assert_eq!(before, pairs.len());
    }

    #[test]
    fn black_is_on_the_right() {
        let p = parse_polynomial("z21+z41").unwrap();
        let arr = Arrangement::compute(&p).unwrap();
        for s in arr.segments.iter().take(40) {
            // right normal of vector (x,y) is (y,-x)
            let nrm = QV::new(s.vector.y.clone(), -s.vector.x.clone());
            let den = q(64 * arr.k);
            let off = QV::new(&nrm.x / &den, &nrm.y / &den);
            assert_eq!(p.evaluate_one(&s.midpoint.add(&off)), 1, "black right of {s:?}");
            assert_eq!(p.evaluate_one(&s.midpoint.sub(&off)), 0, "white left of {s:?}");
        }
    }

    #[test]
    fn aut_lattice_of_square_pattern() {
        let p = parse_polynomial("z21+z41").unwrap();
        let arr = Arrangement::compute(&p).unwrap();
        // printed: Z v6 + (1/3) Z v3, i.e. (2,0) and (0,2/3) in frequency units
        let expect =
            LatticeBasis::from_generators(&[QV::from_ints(2, 0), QV::new(q(0), qr(2, 3))]).unwrap();
        assert!(arr.aut.same_lattice(&expect));
        assert_eq!(arr.aut.b1, QV::from_ints(2, 0));
        assert_eq!(arr.aut.b2, QV::new(q(0), qr(2, 3)));
    }

    #[test]
    fn aut_lattice_of_triangle_pattern() {
        let p = parse_polynomial("z21+z41+z61").unwrap();
        let arr = Arrangement::compute(&p).unwrap();
        // printed: Z v6 + (1/3) Z v5 = span{(2,0), (1,1/3)}
        let expect =
            LatticeBasis::from_generators(&[QV::from_ints(2, 0), QV::new(q(1), qr(1, 3))]).unwrap();
        assert!(arr.aut.same_lattice(&expect));
    }

    #[test]
    fn translations_map_tiling_to_itself_pointwise() {
        let p = parse_polynomial("z21+z41+z61").unwrap();
        let arr = Arrangement::compute(&p).unwrap();
        for b in [&arr.aut_working.b1, &arr.aut_working.b2] {
            for a in -3i64..4 {
                for c in -3i64..4 {
                    let pt = QV::new(qr(a, 7), qr(c, 5));
                    assert_eq!(p.evaluate_one(&pt), p.evaluate_one(&pt.add(b)));
                }
            }
        }
    }

    #[test]
    fn convexity_flags_open_and_bent_cycles() {
        let sq = vec![
            QV::from_ints(1, 0),
            QV::from_ints(0, 1),
            QV::from_ints(-1, 0),
            QV::from_ints(0, -1),
        ];
        let (ok, _) = check_convexity(&[sq.clone()], &[sq.iter().rev().map(|v| v.neg()).collect()]);
        assert!(ok);
        let open = vec![QV::from_ints(1, 0), QV::from_ints(0, 1)];
        let (ok, msgs) = check_convexity(&[open], &[]);
        assert!(!ok && msgs[0].contains("close"));
        let reflex = vec![
            QV::from_ints(1, 0),
            QV::from_ints(0, 1),
            QV::from_ints(1, 0),
            QV::from_ints(-2, 0),
            QV::from_ints(0, -1),
        ];
        let (ok, msgs) = check_convexity(&[reflex], &[]);
        assert!(!ok && msgs[0].contains("corner"));
    }
}
