//! Triple systems: the concurrency triples of a line arrangement (its rank-3
//! matroid), the group-law systems on finite fields, and exact isomorphism
//! and automorphism search.
//!
//! Both searches share one backtracking engine over label bijections. After
//! each assignment it checks every assigned pair against the pair's triples
//! and, when a pair lies in exactly one triple on both sides, forces the
//! image of the third label. For Steiner systems almost every assignment is
//! forced this way, so the search tree stays small.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use crate::arrange::{Arrangement, SingularitySpectrum};
use crate::gf::FieldCtx;
use crate::{Error, Result};

/// A labelled ground set and a set of 3-subsets of it.
///
/// Each triple is stored sorted, and the triple list is sorted
/// lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TripleSystem {
    ground: Vec<i64>,
    triples: Vec<[i64; 3]>,
}

impl TripleSystem {
    pub fn new(ground: Vec<i64>, triples: impl IntoIterator<Item = [i64; 3]>) -> Result<Self> {
        let members: BTreeSet<i64> = ground.iter().copied().collect();
        if members.len() != ground.len() {
            let mut seen = BTreeSet::new();
            let dup = ground
                .iter()
                .find(|l| !seen.insert(**l))
                .expect("a duplicate exists");
            return Err(Error::DuplicateLabel(*dup));
        }
        let mut set = BTreeSet::new();
        for t in triples {
            let mut s = t;
            s.sort_unstable();
            if s[0] == s[1] || s[1] == s[2] {
                return Err(Error::BadTriple(t, "repeated member"));
            }
            if let Some(l) = s.iter().find(|l| !members.contains(l)) {
                return Err(Error::UnknownLabel(*l));
            }
            if !set.insert(s) {
                return Err(Error::BadTriple(t, "duplicate triple"));
            }
        }
        Ok(TripleSystem {
            ground,
            triples: set.into_iter().collect(),
        })
    }

    pub fn ground(&self) -> &[i64] {
        &self.ground
    }

    pub fn triples(&self) -> &[[i64; 3]] {
        &self.triples
    }

    pub fn contains(&self, a: i64, b: i64, c: i64) -> bool {
        let mut t = [a, b, c];
        t.sort_unstable();
        self.triples.binary_search(&t).is_ok()
    }

    /// Number of triples containing `label`.
    pub fn degree(&self, label: i64) -> usize {
        self.triples.iter().filter(|t| t.contains(&label)).count()
    }

    /// Every 2-subset of the ground set lies in exactly one triple.
    pub fn is_steiner(&self) -> bool {
        let idx = Indexed::new(self);
        (0..idx.m).all(|a| (a + 1..idx.m).all(|b| idx.thirds(a as u32, b as u32).len() == 1))
    }

    /// The triples lying inside `subset`, on the ground set `subset` (kept in
    /// the original ground order).
    pub fn restrict(&self, subset: &[i64]) -> Result<TripleSystem> {
        let keep: BTreeSet<i64> = subset.iter().copied().collect();
        let members: BTreeSet<i64> = self.ground.iter().copied().collect();
        if let Some(l) = keep.iter().find(|l| !members.contains(l)) {
            return Err(Error::UnknownLabel(*l));
        }
        Ok(TripleSystem {
            ground: self
                .ground
                .iter()
                .copied()
                .filter(|l| keep.contains(l))
                .collect(),
            triples: self
                .triples
                .iter()
                .copied()
                .filter(|t| t.iter().all(|l| keep.contains(l)))
                .collect(),
        })
    }

    /// Renames every label through `f`, which must be injective on the
    /// ground set.
    pub fn relabel(&self, f: impl Fn(i64) -> i64) -> Result<TripleSystem> {
        TripleSystem::new(
            self.ground.iter().map(|&l| f(l)).collect(),
            self.triples.iter().map(|t| t.map(&f)),
        )
    }
}

/// The concurrency triples of an audited arrangement: every 3-subset of the
/// lines through each point of multiplicity at least 3.
pub fn from_arrangement(
    arrangement: &Arrangement<'_>,
    spectrum: &SingularitySpectrum<'_>,
) -> TripleSystem {
    let mut triples = BTreeSet::new();
    for mp in &spectrum.points {
        let l = &mp.labels;
        for i in 0..l.len() {
            for j in i + 1..l.len() {
                for k in j + 1..l.len() {
                    let mut t = [l[i], l[j], l[k]];
                    t.sort_unstable();
                    triples.insert(t);
                }
            }
        }
    }
    TripleSystem::new(arrangement.labels().to_vec(), triples)
        .expect("labels of an arrangement are unique")
}

/// Zero-sum 3-subsets of K in characteristic 3, labels = encodings.
pub fn make_mq(ctx: &FieldCtx) -> Result<TripleSystem> {
    if ctx.characteristic() != 3 {
        return Err(Error::WrongCharacteristic {
            expected: "3",
            found: ctx.characteristic(),
        });
    }
    let els = ctx.enumerate();
    let mut triples = Vec::new();
    for (i, &a) in els.iter().enumerate() {
        for &b in &els[i + 1..] {
            let c = -(a + b);
            if c.encode() > b.encode() {
                triples.push([a.encode() as i64, b.encode() as i64, c.encode() as i64]);
            }
        }
    }
    TripleSystem::new(els.iter().map(|e| e.encode() as i64).collect(), triples)
}

/// Triples `{a, b, a + b}` of nonzero elements in characteristic 2.
pub fn make_nq(ctx: &FieldCtx) -> Result<TripleSystem> {
    if ctx.characteristic() != 2 {
        return Err(Error::WrongCharacteristic {
            expected: "2",
            found: ctx.characteristic(),
        });
    }
    if ctx.order() < 4 {
        return Err(Error::FieldTooSmall);
    }
    let els: Vec<_> = ctx.elements().skip(1).collect();
    let mut triples = Vec::new();
    for (i, &a) in els.iter().enumerate() {
        for &b in &els[i + 1..] {
            let c = a + b;
            if c.encode() > b.encode() {
                triples.push([a.encode() as i64, b.encode() as i64, c.encode() as i64]);
            }
        }
    }
    TripleSystem::new(els.iter().map(|e| e.encode() as i64).collect(), triples)
}

/// Lines of PG(n−1, 2): nonzero vectors of (F₂)^n as binary integers, with
/// triples `{u, v, u ⊕ v}`.
pub fn make_projection_matroid(n: u32) -> Result<TripleSystem> {
    if !(2..=20).contains(&n) {
        return Err(Error::GroundTooSmall(n as usize));
    }
    let top = 1i64 << n;
    let mut triples = Vec::new();
    for u in 1..top {
        for v in u + 1..top {
            let w = u ^ v;
            if w > v {
                triples.push([u, v, w]);
            }
        }
    }
    TripleSystem::new((1..top).collect(), triples)
}

/// A label bijection between two triple systems.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoWitness {
    /// `(label in the source, image label)`, in source ground order.
    pub pairs: Vec<(i64, i64)>,
}

impl IsoWitness {
    pub fn identity(ts: &TripleSystem) -> Self {
        IsoWitness {
            pairs: ts.ground.iter().map(|&l| (l, l)).collect(),
        }
    }

    pub fn image(&self, label: i64) -> Option<i64> {
        self.pairs
            .iter()
            .find(|(a, _)| *a == label)
            .map(|&(_, b)| b)
    }

    pub fn inverse(&self) -> IsoWitness {
        let mut pairs: Vec<(i64, i64)> = self.pairs.iter().map(|&(a, b)| (b, a)).collect();
        pairs.sort_unstable();
        IsoWitness { pairs }
    }

    /// Whether this is a bijection `from.ground → to.ground` carrying the
    /// triples of `from` onto the triples of `to`.
    pub fn verify(&self, from: &TripleSystem, to: &TripleSystem) -> bool {
        if from.ground.len() != to.ground.len() || from.triples.len() != to.triples.len() {
            return false;
        }
        let map: BTreeMap<i64, i64> = self.pairs.iter().copied().collect();
        let sources: BTreeSet<i64> = from.ground.iter().copied().collect();
        let targets: BTreeSet<i64> = to.ground.iter().copied().collect();
        let images: BTreeSet<i64> = map.values().copied().collect();
        if map.len() != self.pairs.len()
            || map.keys().copied().collect::<BTreeSet<_>>() != sources
            || images != targets
        {
            return false;
        }
        from.triples
            .iter()
            .all(|t| to.contains(map[&t[0]], map[&t[1]], map[&t[2]]))
    }
}

/// Index-based view of a triple system used by the searches.
struct Indexed {
    m: usize,
    degree: Vec<u32>,
    /// `thirds[a * m + b]`: sorted third members of triples containing `a, b`.
    thirds: Vec<Vec<u32>>,
}

impl Indexed {
    fn new(ts: &TripleSystem) -> Self {
        let m = ts.ground.len();
        let pos: BTreeMap<i64, u32> = ts
            .ground
            .iter()
            .enumerate()
            .map(|(i, &l)| (l, i as u32))
            .collect();
        let mut degree = vec![0u32; m];
        let mut thirds = vec![Vec::new(); m * m];
        for t in &ts.triples {
            let [a, b, c] = t.map(|l| pos[&l]);
            for (x, y, z) in [
                (a, b, c),
                (b, a, c),
                (a, c, b),
                (c, a, b),
                (b, c, a),
                (c, b, a),
            ] {
                thirds[x as usize * m + y as usize].push(z);
            }
            for x in [a, b, c] {
                degree[x as usize] += 1;
            }
        }
        for list in &mut thirds {
            list.sort_unstable();
        }
        Indexed { m, degree, thirds }
    }

    fn thirds(&self, a: u32, b: u32) -> &[u32] {
        &self.thirds[a as usize * self.m + b as usize]
    }

    fn degree_profile(&self) -> Vec<u32> {
        let mut d = self.degree.clone();
        d.sort_unstable();
        d
    }
}

const UNSET: u32 = u32::MAX;

/// Backtracking over bijections `src → dst` with forced extension.
struct Matcher<'a> {
    src: &'a Indexed,
    dst: &'a Indexed,
    fwd: Vec<u32>,
    inv: Vec<u32>,
    trail: Vec<u32>,
    queue: Vec<(u32, u32)>,
    nodes: u64,
}

impl<'a> Matcher<'a> {
    fn new(src: &'a Indexed, dst: &'a Indexed) -> Self {
        Matcher {
            src,
            dst,
            fwd: vec![UNSET; src.m],
            inv: vec![UNSET; dst.m],
            trail: Vec::with_capacity(src.m),
            queue: Vec::new(),
            nodes: 0,
        }
    }

    /// Assigns `x ↦ y` and everything it forces. On failure the caller
    /// undoes to its mark.
    fn assign(&mut self, x: u32, y: u32) -> bool {
        self.queue.clear();
        self.queue.push((x, y));
        while let Some((x, y)) = self.queue.pop() {
            let fx = self.fwd[x as usize];
            if fx != UNSET {
                if fx != y {
                    return false;
                }
                continue;
            }
            if self.inv[y as usize] != UNSET
                || self.src.degree[x as usize] != self.dst.degree[y as usize]
            {
                return false;
            }
            for &a in &self.trail {
                let fa = self.fwd[a as usize];
                let t1 = self.src.thirds(x, a);
                let t2 = self.dst.thirds(y, fa);
                if t1.len() != t2.len() {
                    return false;
                }
                for &c in t1 {
                    let fc = self.fwd[c as usize];
                    if fc != UNSET && t2.binary_search(&fc).is_err() {
                        return false;
                    }
                }
                for &d in t2 {
                    let id = self.inv[d as usize];
                    if id != UNSET && t1.binary_search(&id).is_err() {
                        return false;
                    }
                }
                if t1.len() == 1 && self.fwd[t1[0] as usize] == UNSET {
                    self.queue.push((t1[0], t2[0]));
                }
            }
            self.fwd[x as usize] = y;
            self.inv[y as usize] = x;
            self.trail.push(x);
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let x = self.trail.pop().expect("trail is longer than mark");
            self.inv[self.fwd[x as usize] as usize] = UNSET;
            self.fwd[x as usize] = UNSET;
        }
    }

    /// Visits every complete bijection; `visit` returns `false` to stop.
    /// Returns `false` if stopped early.
    fn search(&mut self, visit: &mut dyn FnMut(&[u32]) -> bool) -> bool {
        self.nodes += 1;
        let Some(x) = self.fwd.iter().position(|&y| y == UNSET) else {
            return visit(&self.fwd);
        };
        let x = x as u32;
        for y in 0..self.dst.m as u32 {
            if self.inv[y as usize] != UNSET
                || self.src.degree[x as usize] != self.dst.degree[y as usize]
            {
                continue;
            }
            let mark = self.trail.len();
            if self.assign(x, y) && !self.search(visit) {
                self.undo(mark);
                return false;
            }
            self.undo(mark);
        }
        true
    }
}

/// Outcome of an isomorphism search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoSearch {
    pub witness: Option<IsoWitness>,
    pub nodes: u64,
}

/// Finds a label bijection carrying the triples of `a` onto those of `b`,
/// or certifies that none exists. Deterministic for a given input order.
pub fn isomorphic(a: &TripleSystem, b: &TripleSystem) -> IsoSearch {
    let (ia, ib) = (Indexed::new(a), Indexed::new(b));
    if ia.m != ib.m
        || a.triples.len() != b.triples.len()
        || ia.degree_profile() != ib.degree_profile()
    {
        return IsoSearch {
            witness: None,
            nodes: 0,
        };
    }
    let mut matcher = Matcher::new(&ia, &ib);
    let mut found = None;
    matcher.search(&mut |map| {
        found = Some(map.to_vec());
        false
    });
    let witness = found.map(|map| IsoWitness {
        pairs: map
            .iter()
            .enumerate()
            .map(|(i, &j)| (a.ground[i], b.ground[j as usize]))
            .collect(),
    });
    debug_assert!(witness.as_ref().is_none_or(|w| w.verify(a, b)));
    IsoSearch {
        witness,
        nodes: matcher.nodes,
    }
}

/// The automorphism group, counted element by element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Automorphisms {
    pub order: u64,
    /// A strong generating set relative to the ground order: for every
    /// position `k` and every image of label `k` under the automorphisms
    /// fixing the labels before it, one such automorphism.
    pub generators: Vec<IsoWitness>,
    pub nodes: u64,
}

/// Exact order of the automorphism group, by exhaustive enumeration.
pub fn automorphism_order(ts: &TripleSystem) -> Automorphisms {
    let idx = Indexed::new(ts);
    let mut matcher = Matcher::new(&idx, &idx);
    let mut order = 0u64;
    let mut transversal: BTreeMap<(u32, u32), Vec<u32>> = BTreeMap::new();
    matcher.search(&mut |perm| {
        order += 1;
        if let Some(k) = (0..perm.len()).find(|&k| perm[k] != k as u32) {
            transversal
                .entry((k as u32, perm[k]))
                .or_insert_with(|| perm.to_vec());
        }
        true
    });
    let generators = transversal
        .into_values()
        .map(|perm| IsoWitness {
            pairs: perm
                .iter()
                .enumerate()
                .map(|(i, &j)| (ts.ground[i], ts.ground[j as usize]))
                .collect(),
        })
        .collect();
    Automorphisms {
        order,
        generators,
        nodes: matcher.nodes,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrange::{build_ceva, build_char2, build_char3};
    use proptest::prelude::*;

    fn f(p: u32, n: u32) -> FieldCtx {
        FieldCtx::new(p, n, None).unwrap()
    }

    fn extracted(a: &Arrangement<'_>) -> TripleSystem {
        from_arrangement(a, &a.audit().unwrap())
    }

    /// Size of the permutation group generated by `gens`, by closure.
    fn closure_order(ts: &TripleSystem, gens: &[IsoWitness]) -> usize {
        let pos: BTreeMap<i64, usize> = ts
            .ground()
            .iter()
            .enumerate()
            .map(|(i, &l)| (l, i))
            .collect();
        let perms: Vec<Vec<usize>> = gens
            .iter()
            .map(|g| g.pairs.iter().map(|(_, b)| pos[b]).collect())
            .collect();
        let id: Vec<usize> = (0..ts.ground().len()).collect();
        let mut seen = BTreeSet::new();
        seen.insert(id.clone());
        let mut frontier = vec![id];
        while let Some(g) = frontier.pop() {
            for h in &perms {
                let gh: Vec<usize> = g.iter().map(|&i| h[i]).collect();
                if seen.insert(gh.clone()) {
                    frontier.push(gh);
                }
            }
        }
        seen.len()
    }

    #[test]
    fn validation() {
        assert_eq!(
            TripleSystem::new(vec![1, 1], []),
            Err(Error::DuplicateLabel(1))
        );
        assert_eq!(
            TripleSystem::new(vec![1, 2, 3], [[1, 2, 2]]),
            Err(Error::BadTriple([1, 2, 2], "repeated member"))
        );
        assert_eq!(
            TripleSystem::new(vec![1, 2, 3], [[1, 2, 4]]),
            Err(Error::UnknownLabel(4))
        );
        assert!(matches!(
            TripleSystem::new(vec![1, 2, 3], [[1, 2, 3], [3, 2, 1]]),
            Err(Error::BadTriple(_, "duplicate triple"))
        ));
        let ts = TripleSystem::new(vec![3, 1, 2, 4], [[4, 2, 1], [3, 2, 1]]).unwrap();
        assert_eq!(ts.triples(), &[[1, 2, 3], [1, 2, 4]]);
    }

    #[test]
    fn extraction_examples() {
        let (f3, f9, f8) = (f(3, 1), f(3, 2), f(2, 3));
        let m3 = extracted(&build_char3(&f3).unwrap());
        assert_eq!(m3.ground(), &[0, 1, 2]);
        assert_eq!(m3.triples(), &[[0, 1, 2]]);
        let m9 = extracted(&build_char3(&f9).unwrap());
        assert_eq!((m9.ground().len(), m9.triples().len()), (9, 12));
        let n7 = extracted(&build_char2(&f8).unwrap());
        assert_eq!((n7.ground().len(), n7.triples().len()), (7, 7));
    }

    #[test]
    fn group_law_systems() {
        assert_eq!(make_mq(&f(3, 1)).unwrap().triples(), &[[0, 1, 2]]);
        assert_eq!(make_mq(&f(3, 2)).unwrap().triples().len(), 12);
        let m27 = make_mq(&f(3, 3)).unwrap();
        assert_eq!(m27.triples().len(), 27 * 26 / 6);
        assert!(make_mq(&f(2, 2)).is_err());

        // t = 2, t + 1 = 3 in F4
        assert_eq!(make_nq(&f(2, 2)).unwrap().triples(), &[[1, 2, 3]]);
        assert_eq!(make_nq(&f(2, 3)).unwrap().triples().len(), 7);
        assert_eq!(make_nq(&f(2, 4)).unwrap().triples().len(), 35);
        assert!(make_nq(&f(3, 2)).is_err());

        assert_eq!(make_projection_matroid(2).unwrap().triples(), &[[1, 2, 3]]);
        assert_eq!(make_projection_matroid(3).unwrap().triples().len(), 7);
        assert_eq!(make_projection_matroid(4).unwrap().triples().len(), 35);
    }

    #[test]
    fn extraction_matches_group_law() {
        for n in 1..=4 {
            let k = f(3, n);
            assert_eq!(extracted(&build_char3(&k).unwrap()), make_mq(&k).unwrap());
        }
        for n in 2..=6 {
            let k = f(2, n);
            assert_eq!(extracted(&build_char2(&k).unwrap()), make_nq(&k).unwrap());
        }
    }

    #[test]
    fn steiner() {
        for k in [f(3, 1), f(3, 2), f(3, 3), f(3, 4)] {
            let m = make_mq(&k).unwrap();
            assert!(m.is_steiner());
            let q = k.order() as usize;
            assert_eq!(m.triples().len(), q * (q - 1) / 6);
        }
        for n in 2..=6 {
            let m = make_nq(&f(2, n)).unwrap();
            assert!(m.is_steiner());
            let q = 1usize << n;
            assert_eq!(m.triples().len(), (q - 1) * (q - 2) / 6);
        }
        let f7 = f(7, 1);
        let g7 = crate::arrange::build_generic(&f7).unwrap();
        assert!(!extracted(&g7).is_steiner());
    }

    #[test]
    fn ceva_and_fano_identifications() {
        let (f9, f7, f8) = (f(3, 2), f(7, 1), f(2, 3));
        let m9 = extracted(&build_char3(&f9).unwrap());
        let ceva = extracted(&build_ceva(&f7).unwrap());
        let w = isomorphic(&m9, &ceva).witness.expect("isomorphic");
        assert!(w.verify(&m9, &ceva));
        assert!(w.inverse().verify(&ceva, &m9));

        let c7 = extracted(&build_char2(&f8).unwrap());
        let fano = make_projection_matroid(3).unwrap();
        assert!(isomorphic(&c7, &fano).witness.unwrap().verify(&c7, &fano));

        let n15 = make_nq(&f(2, 4)).unwrap();
        assert_eq!(isomorphic(&m9, &n15).witness, None);
    }

    #[test]
    fn small_systems() {
        let a = TripleSystem::new(vec![0, 1, 2, 3, 4], [[0, 1, 2], [0, 3, 4]]).unwrap();
        let b = TripleSystem::new(vec![0, 1, 2, 3, 4], [[0, 1, 2], [1, 3, 4]]).unwrap();
        assert!(isomorphic(&a, &b).witness.unwrap().verify(&a, &b));
        // a pair lying in two triples: {0, 1} on one side, {3, 4} on the other
        let c = TripleSystem::new((0..6).collect(), [[0, 1, 2], [3, 4, 5], [0, 1, 3]]).unwrap();
        let d = TripleSystem::new((0..6).collect(), [[0, 1, 2], [3, 4, 5], [0, 3, 4]]).unwrap();
        assert!(isomorphic(&c, &d).witness.unwrap().verify(&c, &d));
        // Pasch configurations
        let e = TripleSystem::new(
            (0..6).collect(),
            [[0, 1, 2], [0, 3, 4], [1, 3, 5], [2, 4, 5]],
        )
        .unwrap();
        let h = TripleSystem::new(
            (0..6).collect(),
            [[0, 1, 5], [0, 2, 3], [1, 2, 4], [3, 4, 5]],
        )
        .unwrap();
        assert!(isomorphic(&e, &h).witness.is_some());
        let g = TripleSystem::new(
            (0..6).collect(),
            [[0, 1, 2], [0, 3, 4], [1, 3, 5], [0, 2, 5]],
        )
        .unwrap();
        assert_eq!(isomorphic(&e, &g).witness, None);
    }

    #[test]
    fn exhausts_with_equal_degree_profiles() {
        // both 2-regular on 6 labels; only the second has a pair in two triples
        let pasch = TripleSystem::new(
            (0..6).collect(),
            [[0, 1, 2], [0, 3, 4], [1, 3, 5], [2, 4, 5]],
        )
        .unwrap();
        let other = TripleSystem::new(
            (0..6).collect(),
            [[0, 1, 2], [0, 1, 3], [2, 4, 5], [3, 4, 5]],
        )
        .unwrap();
        let r = isomorphic(&pasch, &other);
        assert_eq!(r.witness, None);
        assert!(r.nodes > 0);
    }

    #[test]
    fn isomorphism_is_an_equivalence() {
        let m9 = make_mq(&f(3, 2)).unwrap();
        let w = isomorphic(&m9, &m9).witness.unwrap();
        assert_eq!(w, IsoWitness::identity(&m9));
        let shuffled = m9.relabel(|l| (l * 5 + 2) % 9 + 100).unwrap();
        let w = isomorphic(&m9, &shuffled).witness.unwrap();
        assert!(w.inverse().verify(&shuffled, &m9));
    }

    #[test]
    fn automorphism_orders() {
        let m3 = make_mq(&f(3, 1)).unwrap();
        assert_eq!(automorphism_order(&m3).order, 6);
        let m9 = make_mq(&f(3, 2)).unwrap();
        let aut = automorphism_order(&m9);
        assert_eq!(aut.order, 432);
        assert_eq!(closure_order(&m9, &aut.generators), 432);
        for g in &aut.generators {
            assert!(g.verify(&m9, &m9));
        }
        let fano = make_projection_matroid(3).unwrap();
        let aut = automorphism_order(&fano);
        assert_eq!(aut.order, 168);
        assert_eq!(closure_order(&fano, &aut.generators), 168);
    }

    #[test]
    fn restriction() {
        let f27 = f(3, 3);
        let m27 = make_mq(&f27).unwrap();
        let prime: Vec<i64> = f27
            .span_members(&[f27.one()])
            .unwrap()
            .iter()
            .map(|e| e.encode() as i64)
            .collect();
        let r = m27.restrict(&prime).unwrap();
        let m3 = make_mq(&f(3, 1)).unwrap();
        assert!(isomorphic(&r, &m3).witness.is_some());
        assert_eq!(m27.restrict(m27.ground()).unwrap(), m27);
        assert_eq!(m27.restrict(&[0, 99]), Err(Error::UnknownLabel(99)));
    }

    /// The affine map `x ↦ A x + t` on (F₃)^n coordinates, as a label map.
    fn affine_label_map(ctx: &FieldCtx, a: &[Vec<u32>], t: &[u32]) -> impl Fn(i64) -> i64 {
        let n = ctx.degree() as usize;
        let (a, t) = (a.to_vec(), t.to_vec());
        move |label| {
            let mut x = label as u32;
            let mut coords = vec![0u32; n];
            for c in coords.iter_mut() {
                *c = x % 3;
                x /= 3;
            }
            let image: Vec<u32> = (0..n)
                .map(|i| (t[i] + (0..n).map(|j| a[i][j] * coords[j]).sum::<u32>()) % 3)
                .collect();
            image.iter().rev().fold(0i64, |acc, &d| acc * 3 + d as i64)
        }
    }

    fn det_mod3(a: &[Vec<u32>]) -> u32 {
        match a.len() {
            1 => a[0][0] % 3,
            2 => (a[0][0] * a[1][1] + 2 * a[0][1] * a[1][0]) % 3,
            _ => {
                let minor = |r: usize, c: usize| {
                    let m: Vec<Vec<u32>> = (0..3)
                        .filter(|&i| i != r)
                        .map(|i| (0..3).filter(|&j| j != c).map(|j| a[i][j]).collect())
                        .collect();
                    det_mod3(&m)
                };
                (a[0][0] * minor(0, 0) + 2 * a[0][1] * minor(0, 1) + a[0][2] * minor(0, 2)) % 3
            }
        }
    }

    proptest! {
        #[test]
        fn affine_maps_are_automorphisms(
            n in 1usize..=3,
            entries in proptest::collection::vec(0u32..3, 9),
            shift in proptest::collection::vec(0u32..3, 3),
        ) {
            let a: Vec<Vec<u32>> = (0..n).map(|i| (0..n).map(|j| entries[i * 3 + j]).collect()).collect();
            prop_assume!(det_mod3(&a) != 0);
            let ctx = f(3, n as u32);
            let m = make_mq(&ctx).unwrap();
            let g = affine_label_map(&ctx, &a, &shift[..n]);
            let w = IsoWitness { pairs: m.ground().iter().map(|&l| (l, g(l))).collect() };
            prop_assert!(w.verify(&m, &m));
        }
    }
}
