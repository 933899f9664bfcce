//! Reduction of the plane tiling modulo a sublattice to the finite
//! superpotential `(E, sigma0, sigma1)` with its realization.
//!
//! Edges of the patch are reduced modulo the sublattice by taking fractional
//! parts of their basis coordinates; the two permutations are read off at
//! each target point as the extreme successors in exact angular order, and
//! degree-2 target points are fused away.

use std::collections::BTreeMap;

use num_traits::Signed;
use serde_json::{json, Value};

use crate::arrangement::Arrangement;
use crate::geom::{q, LatticeBasis, Q, QV};
use crate::perm::{conjugating_bijection, Perm};
use crate::{Error, Result};

/// Finite superpotential: edge set `{0..n-1}` with the white and black
/// boundary permutations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Superpotential {
    sigma0: Perm,
    sigma1: Perm,
    /// Stable per-edge labels from the `a + 2bK` packing of reduced
    /// midpoints (or its widened variant when coordinates exceed 2K).
    pub labels: Vec<i64>,
}

/// Geometric realization of a superpotential: edge vectors and the lattice
/// realizing the quotient torus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Realization {
    pub omega: Vec<QV>,
    pub lattice: LatticeBasis,
}

impl Superpotential {
    pub fn new(sigma0: Perm, sigma1: Perm, labels: Vec<i64>) -> Result<Superpotential> {
        if sigma0.len() != sigma1.len() || sigma0.len() != labels.len() {
            return Err(Error::Invalid("permutation sizes differ".into()));
        }
        let sp = Superpotential { sigma0, sigma1, labels };
        sp.check_genus()?;
        Ok(sp)
    }

    pub fn edge_count(&self) -> usize {
        self.sigma0.len()
    }

    pub fn sigma0(&self) -> &Perm {
        &self.sigma0
    }

    pub fn sigma1(&self) -> &Perm {
        &self.sigma1
    }

    /// sigma2 = sigma1^{-1} . sigma0; its cycles are the vertices.
    pub fn sigma2(&self) -> Perm {
        self.sigma1.inverse().compose(&self.sigma0)
    }

    pub fn white_cycles(&self) -> Vec<Vec<usize>> {
        self.sigma0.cycles()
    }

    pub fn black_cycles(&self) -> Vec<Vec<usize>> {
        self.sigma1.cycles()
    }

    pub fn vertex_cycles(&self) -> Vec<Vec<usize>> {
        self.sigma2().cycles()
    }

    /// Cycles of sigma1 . sigma0; each one, together with its sigma0-shift,
    /// traces one zigzag strand.
    pub fn zigzag_cycles(&self) -> Vec<Vec<usize>> {
        self.sigma1.compose(&self.sigma0).cycles()
    }

    /// |sigma0| + |sigma1| + |sigma2| = |E| on the torus.
    pub fn check_genus(&self) -> Result<()> {
        let c = self.sigma0.cycle_count() + self.sigma1.cycle_count() + self.sigma2().cycle_count();
        if c != self.edge_count() {
            return Err(Error::Invariant(format!(
                "genus identity violated: {} + {} + {} != {}",
                self.sigma0.cycle_count(),
                self.sigma1.cycle_count(),
                self.sigma2().cycle_count(),
                self.edge_count()
            )));
        }
        Ok(())
    }

    /// Index of the white face containing each edge.
    pub fn white_of(&self) -> Vec<usize> {
        face_index(&self.white_cycles(), self.edge_count())
    }

    pub fn black_of(&self) -> Vec<usize> {
        face_index(&self.black_cycles(), self.edge_count())
    }

    /// Vertex incidence: the target of an edge is the sigma2-class containing
    /// it, the source is the class of its sigma0-predecessor.
    pub fn target_of(&self) -> Vec<usize> {
        face_index(&self.vertex_cycles(), self.edge_count())
    }

    pub fn source_of(&self) -> Vec<usize> {
        let t = self.target_of();
        let inv = self.sigma0.inverse();
        (0..self.edge_count()).map(|e| t[inv.apply(e)]).collect()
    }

    pub fn isomorphic(&self, other: &Superpotential) -> Option<Vec<usize>> {
        conjugating_bijection(&self.sigma0, &self.sigma1, &other.sigma0, &other.sigma1)
    }
}

fn face_index(cycles: &[Vec<usize>], n: usize) -> Vec<usize> {
    let mut idx = vec![0usize; n];
    for (i, c) in cycles.iter().enumerate() {
        for &e in c {
            idx[e] = i;
        }
    }
    idx
}

/// Reduction data kept around for deck transformations.
pub struct Quotient {
    pub superpotential: Superpotential,
    pub realization: Realization,
    /// Sublattice basis used for reduction (first-quadrant form).
    reduction_basis: LatticeBasis,
    /// Automorphism lattice basis of the ambient tiling (working frame).
    aut_working: LatticeBasis,
    /// Reduced midpoint of one pre-fusion representative per final edge.
    rep_mid: Vec<QV>,
    /// Reduced pre-fusion midpoint -> final edge index.
    owners: BTreeMap<QV, usize>,
}

struct PreEdge {
    mid: QV,
    src: QV,
    tgt: QV,
    vec: QV,
    label: i64,
}

/// Build the superpotential of `arr` reduced modulo the sublattice given by
/// integer rows `lam` over the automorphism basis.
pub fn build_superpotential(arr: &Arrangement, lam: [[i64; 2]; 2]) -> Result<Quotient> {
    let det = lam[0][0] * lam[1][1] - lam[0][1] * lam[1][0];
    if det == 0 {
        return Err(Error::SingularLattice);
    }
    let a = &arr.aut_working;
    let b1 = a.b1.scale(&q(lam[0][0])).add(&a.b2.scale(&q(lam[0][1])));
    let b2 = a.b1.scale(&q(lam[1][0])).add(&a.b2.scale(&q(lam[1][1])));
    let lambda = LatticeBasis::from_generators(&[b1, b2])?;
    let red_basis = lambda.first_quadrant()?;
    let patch = arr.patch_for(&red_basis)?;
    let two_k = q(2 * arr.k);

    let reduce = |p: &QV| -> QV {
        let c = red_basis.coords(p);
        let frac = QV::new(&c.x - c.x.floor(), &c.y - c.y.floor());
        red_basis.from_coords(&frac)
    };

    // quotient classes keyed by reduced midpoint
    let mut classes: BTreeMap<QV, PreEdge> = BTreeMap::new();
    for &((sx, sy), (tx, ty)) in &patch.segs {
        let den = 2 * arr.k;
        let src = QV::new(Q::new(sx.into(), den.into()), Q::new(sy.into(), den.into()));
        let tgt = QV::new(Q::new(tx.into(), den.into()), Q::new(ty.into(), den.into()));
        let mid = src.add(&tgt).half();
        let vec = tgt.sub(&src);
        let key = reduce(&mid);
        let entry = PreEdge { mid: key.clone(), src: reduce(&src), tgt: reduce(&tgt), vec, label: 0 };
        match classes.get(&key) {
            Some(prev) => {
                if prev.src != entry.src || prev.tgt != entry.tgt || prev.vec != entry.vec {
                    return Err(Error::Invariant("inconsistent representatives in one class".into()));
                }
            }
            None => {
                classes.insert(key, entry);
            }
        }
    }
    if classes.is_empty() {
        return Err(Error::PatchTooSmall("no edge classes after reduction".into()));
    }

    // labels: a + 2Kb on 2K-scaled reduced midpoints, widened if needed
    let mut scaled: Vec<(i64, i64, QV)> = Vec::new();
    for key in classes.keys() {
        let sx = (&key.x * &two_k).to_integer();
        let sy = (&key.y * &two_k).to_integer();
        let (sx, sy) = (
            i64::try_from(sx).map_err(|_| Error::Invariant("label overflow".into()))?,
            i64::try_from(sy).map_err(|_| Error::Invariant("label overflow".into()))?,
        );
        if sx < 0 || sy < 0 {
            return Err(Error::Invariant("reduced midpoint outside first quadrant".into()));
        }
        scaled.push((sx, sy, key.clone()));
    }
    let max_a = scaled.iter().map(|s| s.0).max().unwrap();
    let modulus = (2 * arr.k).max(max_a + 1);
    let mut sort_keys: Vec<(i64, QV)> =
        scaled.into_iter().map(|(sx, sy, key)| (sx + modulus * sy, key)).collect();
    sort_keys.sort();
    for w in sort_keys.windows(2) {
        if w[0].0 == w[1].0 {
            return Err(Error::Invariant("label collision".into()));
        }
    }
    let mut pre: Vec<PreEdge> = Vec::new();
    for (label, key) in sort_keys {
        let mut e = classes.remove(&key).unwrap();
        e.label = label;
        pre.push(e);
    }

    // successors grouped by source point
    let n_pre = pre.len();
    let mut by_source: BTreeMap<QV, Vec<usize>> = BTreeMap::new();
    for (i, e) in pre.iter().enumerate() {
        by_source.entry(e.src.clone()).or_default().push(i);
    }
    let mut sigma0 = vec![usize::MAX; n_pre];
    let mut sigma1 = vec![usize::MAX; n_pre];
    for (i, e) in pre.iter().enumerate() {
        let outs = by_source
            .get(&e.tgt)
            .ok_or_else(|| Error::PatchTooSmall(format!("no successors at target of edge {i}")))?;
        let mut best_min = usize::MAX;
        let mut best_max = usize::MAX;
        for &j in outs {
            if best_min == usize::MAX {
                best_min = j;
                best_max = j;
                continue;
            }
            if angle_less(&e.vec, &pre[j].vec, &pre[best_min].vec)? {
                best_min = j;
            }
            if angle_less(&e.vec, &pre[best_max].vec, &pre[j].vec)? {
                best_max = j;
            }
        }
        sigma1[i] = best_min;
        sigma0[i] = best_max;
    }

    // fuse degree-2 target points: sigma0(e) == sigma1(e)
    let mut alive: Vec<bool> = vec![true; n_pre];
    let mut owner: Vec<usize> = (0..n_pre).collect();
    let mut vecs: Vec<QV> = pre.iter().map(|e| e.vec.clone()).collect();
    let mut tgts: Vec<QV> = pre.iter().map(|e| e.tgt.clone()).collect();
    loop {
        let bad = (0..n_pre).find(|&i| alive[i] && sigma0[i] == sigma1[i] && sigma0[i] != i);
        let e = match bad {
            Some(e) => e,
            None => break,
        };
        let f = sigma0[e];
        vecs[e] = vecs[e].add(&vecs[f]);
        tgts[e] = tgts[f].clone();
        sigma0[e] = sigma0[f];
        sigma1[e] = sigma1[f];
        alive[f] = false;
        for i in 0..n_pre {
            if alive[i] && i != e {
                if sigma0[i] == f {
                    sigma0[i] = e;
                }
                if sigma1[i] == f {
                    sigma1[i] = e;
                }
            }
        }
        for o in owner.iter_mut() {
            if *o == f {
                *o = e;
            }
        }
        if sigma0[e] == e || sigma1[e] == e {
            return Err(Error::Invariant("fusion produced a one-edge face".into()));
        }
    }

    // compact to final indices
    let final_ids: Vec<usize> = (0..n_pre).filter(|&i| alive[i]).collect();
    let remap: BTreeMap<usize, usize> =
        final_ids.iter().enumerate().map(|(new, &old)| (old, new)).collect();
    let s0 = Perm::from_map(final_ids.iter().map(|&i| remap[&sigma0[i]]).collect())?;
    let s1 = Perm::from_map(final_ids.iter().map(|&i| remap[&sigma1[i]]).collect())?;
    let labels: Vec<i64> = final_ids.iter().map(|&i| pre[i].label).collect();
    let omega: Vec<QV> = final_ids.iter().map(|&i| vecs[i].clone()).collect();
    let sp = Superpotential::new(s0, s1, labels)?;

    // face closure in the realization
    for cyc in sp.white_cycles().iter().chain(sp.black_cycles().iter()) {
        let mut sum = QV::zero();
        for &e in cyc {
            sum = sum.add(&omega[e]);
        }
        if !sum.is_zero() {
            return Err(Error::Invariant("face cycle does not close in the plane".into()));
        }
    }
    // vertex classes must agree with reduced target points
    let tof = sp.target_of();
    let mut seen_pts: BTreeMap<usize, QV> = BTreeMap::new();
    for (new, &old) in final_ids.iter().enumerate() {
        let v = tof[new];
        let pt = tgts[old].clone();
        match seen_pts.get(&v) {
            Some(p) if *p != pt => {
                return Err(Error::Invariant("vertex cycle spans distinct points".into()))
            }
            None => {
                seen_pts.insert(v, pt);
            }
            _ => {}
        }
    }

    let rep_mid: Vec<QV> = final_ids.iter().map(|&i| pre[i].mid.clone()).collect();
    let owners: BTreeMap<QV, usize> =
        (0..n_pre).map(|i| (pre[i].mid.clone(), remap[&owner[i]])).collect();
    Ok(Quotient {
        superpotential: sp,
        realization: Realization { omega, lattice: lambda },
        reduction_basis: red_basis,
        aut_working: arr.aut_working.clone(),
        rep_mid,
        owners,
    })
}

/// Exact "is the angle of `b` from `base` smaller than the angle of `c` from
/// `base`", angles measured in (-pi, pi). Errors on an exact reversal, which
/// cannot occur between boundary edges.
fn angle_less(base: &QV, b: &QV, c: &QV) -> Result<bool> {
    let half = |v: &QV| -> Result<i8> {
        let cr = base.cross(v);
        if cr.is_positive() {
            return Ok(1);
        }
        if cr.is_negative() {
            return Ok(-1);
        }
        if base.dot(v).is_positive() {
            Ok(0)
        } else {
            Err(Error::Invariant("exact reversal among edge successors".into()))
        }
    };
    let (hb, hc) = (half(b)?, half(c)?);
    if hb != hc {
        return Ok(hb < hc);
    }
    if hb == 0 {
        return Err(Error::Invariant("parallel successors at a vertex".into()));
    }
    let cr = b.cross(c);
    if cr.is_zero() {
        return Err(Error::Invariant("parallel successors at a vertex".into()));
    }
    Ok(cr.is_positive())
}

impl Quotient {
    /// Permutation of the edges induced by translating representatives by
    /// `tau` given in automorphism-basis coordinates, then reducing.
    pub fn deck_action(&self, tau: (i64, i64)) -> Result<Perm> {
        let t = self
            .aut_working
            .b1
            .scale(&q(tau.0))
            .add(&self.aut_working.b2.scale(&q(tau.1)));
        let n = self.superpotential.edge_count();
        let mut map = vec![0usize; n];
        for e in 0..n {
            let moved = self.rep_mid[e].add(&t);
            let c = self.reduction_basis.coords(&moved);
            let frac = QV::new(&c.x - c.x.floor(), &c.y - c.y.floor());
            let key = self.reduction_basis.from_coords(&frac);
            map[e] = *self
                .owners
                .get(&key)
                .ok_or_else(|| Error::Invariant("translated midpoint hits no class".into()))?;
        }
        Perm::from_map(map)
    }
}

/// Parse + scan + reduce in one step.
pub fn motive_from_text(text: &str, lam: [[i64; 2]; 2]) -> Result<Quotient> {
    let poly = crate::zebra::parse_polynomial(text)?;
    let arr = Arrangement::compute(&poly)?;
    build_superpotential(&arr, lam)
}

fn q_to_json(x: &Q) -> Result<Value> {
    let n = i64::try_from(x.numer().clone())
        .map_err(|_| Error::Invariant("rational too large for JSON".into()))?;
    let d = i64::try_from(x.denom().clone())
        .map_err(|_| Error::Invariant("rational too large for JSON".into()))?;
    Ok(json!([n, d]))
}

pub(crate) fn qv_to_json(v: &QV) -> Result<Value> {
    Ok(json!([q_to_json(&v.x)?, q_to_json(&v.y)?]))
}

fn q_from_json(v: &Value) -> Result<Q> {
    let arr = v
        .as_array()
        .filter(|a| a.len() == 2)
        .ok_or_else(|| Error::Invalid("expected [num, den]".into()))?;
    let n = arr[0].as_i64().ok_or_else(|| Error::Invalid("numerator must be an integer".into()))?;
    let d = arr[1]
        .as_i64()
        .filter(|&d| d != 0)
        .ok_or_else(|| Error::Invalid("denominator must be a nonzero integer".into()))?;
    Ok(Q::new(n.into(), d.into()))
}

fn qv_from_json(v: &Value) -> Result<QV> {
    let arr = v
        .as_array()
        .filter(|a| a.len() == 2)
        .ok_or_else(|| Error::Invalid("expected [[n,d],[n,d]]".into()))?;
    Ok(QV::new(q_from_json(&arr[0])?, q_from_json(&arr[1])?))
}

/// Motive interchange JSON: edges with 1-based ids, source/target vertex ids,
/// edge vectors, the two permutations as cycle lists and the lattice basis.
pub fn to_motive_json(sp: &Superpotential, real: &Realization) -> Result<Value> {
    let sof = sp.source_of();
    let tof = sp.target_of();
    let mut edges = Vec::new();
    for e in 0..sp.edge_count() {
        edges.push(json!({
            "id": e + 1,
            "s": sof[e] + 1,
            "t": tof[e] + 1,
            "vec": qv_to_json(&real.omega[e])?,
        }));
    }
    let cyc = |cs: Vec<Vec<usize>>| -> Value {
        json!(cs.iter().map(|c| c.iter().map(|e| e + 1).collect::<Vec<_>>()).collect::<Vec<_>>())
    };
    Ok(json!({
        "edges": edges,
        "sigma0": cyc(sp.white_cycles()),
        "sigma1": cyc(sp.black_cycles()),
        "lattice": [qv_to_json(&real.lattice.b1)?, qv_to_json(&real.lattice.b2)?],
    }))
}

/// Ingest a motive JSON. Vertex incidence is recomputed from the
/// permutations; the stored `s`/`t` fields are checked for consistency up to
/// renaming but otherwise ignored.
pub fn from_motive_json(v: &Value) -> Result<(Superpotential, Realization)> {
    let edges = v
        .get("edges")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Invalid("missing edges".into()))?;
    let n = edges.len();
    if n == 0 {
        return Err(Error::Invalid("empty edge list".into()));
    }
    let mut omega = vec![QV::zero(); n];
    let mut file_s = vec![0usize; n];
    let mut file_t = vec![0usize; n];
    let mut seen = vec![false; n];
    for e in edges {
        let id = e.get("id").and_then(Value::as_u64).ok_or_else(|| Error::Invalid("edge id".into()))?
            as usize;
        if id == 0 || id > n || seen[id - 1] {
            return Err(Error::Invalid(format!("bad or repeated edge id {id}")));
        }
        seen[id - 1] = true;
        omega[id - 1] = qv_from_json(e.get("vec").ok_or_else(|| Error::Invalid("edge vec".into()))?)?;
        file_s[id - 1] = e.get("s").and_then(Value::as_u64).unwrap_or(0) as usize;
        file_t[id - 1] = e.get("t").and_then(Value::as_u64).unwrap_or(0) as usize;
    }
    let cycles = |key: &str| -> Result<Perm> {
        let cs = v
            .get(key)
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Invalid(format!("missing {key}")))?;
        let mut cyc: Vec<Vec<usize>> = Vec::new();
        for c in cs {
            let c = c.as_array().ok_or_else(|| Error::Invalid("cycle must be an array".into()))?;
            cyc.push(
                c.iter()
                    .map(|x| {
                        x.as_u64()
                            .map(|u| u as usize)
                            .ok_or_else(|| Error::Invalid("cycle entry".into()))
                    })
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        Perm::from_cycles_1based(&cyc, n)
    };
    let sp = Superpotential::new(cycles("sigma0")?, cycles("sigma1")?, (1..=n as i64).collect())?;
    let lat = v
        .get("lattice")
        .and_then(Value::as_array)
        .filter(|a| a.len() == 2)
        .ok_or_else(|| Error::Invalid("missing lattice".into()))?;
    let lattice = LatticeBasis::from_generators(&[qv_from_json(&lat[0])?, qv_from_json(&lat[1])?])?;
    // s/t fields, when present, must be constant on the recomputed classes
    let tof = sp.target_of();
    let sof = sp.source_of();
    let mut names: BTreeMap<usize, usize> = BTreeMap::new();
    for e in 0..n {
        if file_t[e] == 0 {
            continue;
        }
        if *names.entry(tof[e]).or_insert(file_t[e]) != file_t[e]
            || *names.entry(sof[e]).or_insert(file_s[e]) != file_s[e]
        {
            return Err(Error::Invalid("edge endpoints inconsistent with permutations".into()));
        }
    }
    Ok((sp, Realization { omega, lattice }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::Arrangement;
    use crate::zebra::parse_polynomial;

    pub(crate) fn printed(c0: &[Vec<usize>], c1: &[Vec<usize>], n: usize) -> Superpotential {
        Superpotential::new(
            Perm::from_cycles_1based(c0, n).unwrap(),
            Perm::from_cycles_1based(c1, n).unwrap(),
            (1..=n as i64).collect(),
        )
        .unwrap()
    }

    fn build(text: &str) -> Quotient {
        motive_from_text(text, [[1, 0], [0, 1]]).unwrap()
    }

    #[test]
    fn square_pattern_matches_printed_cycles() {
        let qt = build("z21+z41");
        let reference = printed(&[vec![1, 2, 3, 4]], &[vec![1, 4, 3, 2]], 4);
        assert!(qt.superpotential.isomorphic(&reference).is_some());
        assert_eq!(qt.superpotential.vertex_cycles().len(), 2);
    }

    #[test]
    fn triangle_pattern_matches_printed_cycles() {
        let qt = build("z21+z41+z61");
        let reference = printed(&[vec![1, 2, 3]], &[vec![1, 3, 2]], 3);
        assert!(qt.superpotential.isomorphic(&reference).is_some());
        assert_eq!(qt.superpotential.vertex_cycles().len(), 1);
    }

    #[test]
    fn kagome_matches_printed_cycles() {
        let qt = build("z21+z41+z61+z62");
        let reference = printed(&[vec![1, 4, 5, 3, 2, 6]], &[vec![1, 2, 5], vec![3, 4, 6]], 6);
        assert!(qt.superpotential.isomorphic(&reference).is_some());
        assert_eq!(qt.superpotential.vertex_cycles().len(), 3);
    }

    #[test]
    fn fused_example_matches_printed_cycles() {
        let qt = build("z21+z31+z41+z61+z31*z42*z61");
        let reference = printed(
            &[vec![1, 3, 13], vec![4, 6, 2], vec![7, 10, 11], vec![9, 5, 8, 12]],
            &[vec![1, 5, 2], vec![4, 3, 11, 12], vec![7, 6, 8], vec![9, 10, 13]],
            13,
        );
        assert_eq!(qt.superpotential.edge_count(), 13);
        assert!(qt.superpotential.isomorphic(&reference).is_some());
    }

    #[test]
    fn edge_count_scales_with_the_index() {
        let poly = parse_polynomial("z21+z41").unwrap();
        let arr = Arrangement::compute(&poly).unwrap();
        let q1 = build_superpotential(&arr, [[1, 0], [0, 1]]).unwrap();
        let q2 = build_superpotential(&arr, [[2, 0], [0, 2]]).unwrap();
        assert_eq!(q2.superpotential.edge_count(), 4 * q1.superpotential.edge_count());
        assert!(matches!(
            build_superpotential(&arr, [[1, 1], [2, 2]]),
            Err(Error::SingularLattice)
        ));
    }

    #[test]
    fn deck_action_commutes_and_has_expected_order() {
        let poly = parse_polynomial("z21+z41").unwrap();
        let arr = Arrangement::compute(&poly).unwrap();
        let qt = build_superpotential(&arr, [[2, 0], [0, 2]]).unwrap();
        let id = qt.deck_action((2, 0)).unwrap();
        assert_eq!(id, Perm::identity(qt.superpotential.edge_count()));
        let pi = qt.deck_action((1, 0)).unwrap();
        assert!((0..qt.superpotential.edge_count()).all(|e| pi.apply(e) != e));
        assert_eq!(pi.compose(&pi), Perm::identity(qt.superpotential.edge_count()));
        for s in [qt.superpotential.sigma0(), qt.superpotential.sigma1()] {
            assert_eq!(pi.compose(s), s.compose(&pi));
        }
    }

    #[test]
    fn deck_action_commutes_on_triple_cover() {
        let poly = parse_polynomial("z21+z41+z61").unwrap();
        let arr = Arrangement::compute(&poly).unwrap();
        let qt = build_superpotential(&arr, [[3, 0], [0, 3]]).unwrap();
        assert_eq!(qt.superpotential.edge_count(), 27);
        let pi = qt.deck_action((1, 2)).unwrap();
        for s in [qt.superpotential.sigma0(), qt.superpotential.sigma1()] {
            assert_eq!(pi.compose(s), s.compose(&pi));
        }
    }

    #[test]
    fn isomorphism_respects_relabeling_and_size() {
        let a = build("z21+z41").superpotential;
        assert!(a.isomorphic(&a).is_some());
        let g = Perm::from_cycles_1based(&[vec![1, 3, 2]], 4).unwrap();
        let b = Superpotential::new(
            g.compose(a.sigma0()).compose(&g.inverse()),
            g.compose(a.sigma1()).compose(&g.inverse()),
            a.labels.clone(),
        )
        .unwrap();
        assert!(a.isomorphic(&b).is_some());
        let c = build("z21+z41+z61").superpotential;
        assert!(a.isomorphic(&c).is_none());
    }

    #[test]
    fn motive_json_round_trips() {
        let qt = build("z21+z31+z41+z61+z31*z42*z61");
        let js = to_motive_json(&qt.superpotential, &qt.realization).unwrap();
        let (sp, real) = from_motive_json(&js).unwrap();
        assert!(qt.superpotential.isomorphic(&sp).is_some());
        assert_eq!(real.omega, qt.realization.omega);
        assert!(real.lattice.same_lattice(&qt.realization.lattice));
    }

    #[test]
    fn realization_faces_close() {
        for text in ["z21+z41", "z21+z41+z61", "z11+z21+z31+z41+z51+z61"] {
            let qt = build(text);
            for cyc in qt
                .superpotential
                .white_cycles()
                .iter()
                .chain(qt.superpotential.black_cycles().iter())
            {
                let mut sum = QV::zero();
                for &e in cyc {
                    sum = sum.add(&qt.realization.omega[e]);
                }
                assert!(sum.is_zero());
            }
        }
    }
}
