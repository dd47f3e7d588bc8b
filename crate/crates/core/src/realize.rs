//! Realizability of a triple system over a small finite field, and export of
//! its realization ideal.
//!
//! A realization assigns every label a point of P²(K) (the dual point of its
//! line) so that a 3-subset of labels is collinear exactly when it is a
//! triple. Projective transformations act simply transitively on ordered
//! frames, so the search fixes four labels with no triple among them to
//! `(1:0:0), (0:1:0), (0:0:1), (1:1:1)` and enumerates the rest.
//!
//! The search keeps, for every unplaced label, the set of points still
//! allowed by the placed pairs: on the join of `a, b` when `{u, a, b}` is a
//! triple, off it otherwise, and distinct from every placed point. A label
//! with one allowed point is placed without branching; an empty set
//! backtracks. Otherwise it branches on the unplaced label lying in the most
//! triples with two placed members (lowest index on ties), over its allowed
//! points in plane order.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::gf::FieldCtx;
use crate::projplane::{collinear_points, plane_points, plane_size, ProjPoint};
use crate::triples::TripleSystem;
use crate::{Error, Result};

/// Largest ground set for which an exhaustive answer is advertised.
pub const EXHAUSTIVE_MAX_GROUND: usize = 31;
/// Largest field order for which an exhaustive answer is advertised.
pub const EXHAUSTIVE_MAX_ORDER: u32 = 27;

/// How the projective freedom was removed before searching.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Normalization {
    /// Four labels, no three in a triple, fixed to the standard frame.
    Frame([usize; 4]),
    /// No frame exists: three labels not forming a triple fixed to the
    /// coordinate triangle; everything else is enumerated.
    Triangle([usize; 3]),
    /// Every 3-subset is a triple: three labels fixed to `(1:0:0)`,
    /// `(0:1:0)`, `(1:1:0)` on the line `z = 0`.
    Collinear([usize; 3]),
}

impl Normalization {
    /// Ground indices with their fixed coordinates (entries 0 or 1).
    pub fn fixed(&self) -> Vec<(usize, [u32; 3])> {
        const FRAME: [[u32; 3]; 4] = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]];
        const LINE: [[u32; 3]; 3] = [[1, 0, 0], [0, 1, 0], [1, 1, 0]];
        match self {
            Normalization::Frame(ix) => ix.iter().copied().zip(FRAME).collect(),
            Normalization::Triangle(ix) => ix.iter().copied().zip(FRAME).collect(),
            Normalization::Collinear(ix) => ix.iter().copied().zip(LINE).collect(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Normalization::Frame(_) => "frame",
            Normalization::Triangle(_) => "triangle",
            Normalization::Collinear(_) => "collinear",
        }
    }

    /// The fixed labels of `ts`.
    pub fn labels(&self, ts: &TripleSystem) -> Vec<i64> {
        self.fixed().iter().map(|&(i, _)| ts.ground()[i]).collect()
    }
}

/// The lexicographically first four ground indices with no three forming a
/// triple.
fn frame_indices(ts: &TripleSystem) -> Option<[usize; 4]> {
    let g = ts.ground();
    let m = g.len();
    let free = |a: usize, b: usize, c: usize| !ts.contains(g[a], g[b], g[c]);
    for a in 0..m {
        for b in a + 1..m {
            for c in b + 1..m {
                if !free(a, b, c) {
                    continue;
                }
                for d in c + 1..m {
                    if free(a, b, d) && free(a, c, d) && free(b, c, d) {
                        return Some([a, b, c, d]);
                    }
                }
            }
        }
    }
    None
}

/// Four labels no three of which form a triple, lexicographically first
/// in ground order.
pub fn find_frame(ts: &TripleSystem) -> Option<[i64; 4]> {
    frame_indices(ts).map(|ix| ix.map(|i| ts.ground()[i]))
}

/// The frame if there is one, else one of the fallbacks.
pub fn normalization(ts: &TripleSystem) -> Result<Normalization> {
    let g = ts.ground();
    let m = g.len();
    if m < 3 {
        return Err(Error::GroundTooSmall(m));
    }
    if let Some(ix) = frame_indices(ts) {
        return Ok(Normalization::Frame(ix));
    }
    for a in 0..m {
        for b in a + 1..m {
            for c in b + 1..m {
                if !ts.contains(g[a], g[b], g[c]) {
                    return Ok(Normalization::Triangle([a, b, c]));
                }
            }
        }
    }
    Ok(Normalization::Collinear([0, 1, 2]))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Realizable,
    /// The whole search tree was exhausted without a witness.
    Unrealizable,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Realizable => "REALIZABLE",
            Status::Unrealizable => "UNREALIZABLE",
        })
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Search nodes visited, including forced placements.
    pub nodes: u64,
    /// Placements made because only one point was left.
    pub forced: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealizationResult<'f> {
    pub status: Status,
    /// Dual points indexed like the ground set, one vector per witness.
    pub witnesses: Vec<Vec<ProjPoint<'f>>>,
    pub normalization: Normalization,
    pub stats: SearchStats,
}

/// A triple system and the field to realize it over.
#[derive(Debug, Clone, Copy)]
pub struct RealizationProblem<'a, 'f> {
    ts: &'a TripleSystem,
    ctx: &'f FieldCtx,
}

impl<'a, 'f> RealizationProblem<'a, 'f> {
    pub fn new(ts: &'a TripleSystem, ctx: &'f FieldCtx) -> Result<Self> {
        if ts.ground().len() < 3 {
            return Err(Error::GroundTooSmall(ts.ground().len()));
        }
        Ok(RealizationProblem { ts, ctx })
    }

    /// Whether an unrealizable answer for this problem is within the
    /// advertised exhaustive scope.
    pub fn within_exhaustive_scope(&self) -> bool {
        self.ts.ground().len() <= EXHAUSTIVE_MAX_GROUND && self.ctx.order() <= EXHAUSTIVE_MAX_ORDER
    }

    /// Searches for realizations. With `count_all` every frame-fixed
    /// witness is collected; otherwise the search stops at the first one.
    pub fn solve(&self, count_all: bool) -> Result<RealizationResult<'f>> {
        let norm = normalization(self.ts)?;
        let plane = Plane::new(self.ctx);
        let pairs = PairTriples::new(self.ts);
        let mut search = Search {
            plane: &plane,
            pairs: &pairs,
            m: self.ts.ground().len(),
            count_all,
            stats: SearchStats::default(),
            found: Vec::new(),
        };
        let mut state = search.initial_state();
        let mut consistent = true;
        for (label, codes) in norm.fixed() {
            let point = crate::projplane::plane_index(self.ctx.order(), codes) as u32;
            if !search.place(&mut state, label as u32, point) {
                consistent = false;
                break;
            }
        }
        if consistent {
            search.run(state);
        }
        let witnesses: Vec<Vec<ProjPoint<'f>>> = search
            .found
            .iter()
            .map(|w| w.iter().map(|&i| plane.point(self.ctx, i)).collect())
            .collect();
        for w in &witnesses {
            if !verify_witness(self.ts, w) {
                return Err(Error::Invariant(
                    "search produced an invalid realization".into(),
                ));
            }
        }
        Ok(RealizationResult {
            status: if witnesses.is_empty() {
                Status::Unrealizable
            } else {
                Status::Realizable
            },
            witnesses,
            normalization: norm,
            stats: search.stats,
        })
    }
}

/// Convenience wrapper for [`RealizationProblem::solve`].
pub fn realize_over<'f>(
    ts: &TripleSystem,
    ctx: &'f FieldCtx,
    count_all: bool,
) -> Result<RealizationResult<'f>> {
    RealizationProblem::new(ts, ctx)?.solve(count_all)
}

/// Full re-check of a candidate realization from coordinates: points
/// pairwise distinct, and every 3-subset collinear exactly when it is a
/// triple.
pub fn verify_witness(ts: &TripleSystem, points: &[ProjPoint<'_>]) -> bool {
    let g = ts.ground();
    if points.len() != g.len() {
        return false;
    }
    for i in 0..g.len() {
        for j in i + 1..g.len() {
            if points[i] == points[j] {
                return false;
            }
            for k in j + 1..g.len() {
                if collinear_points(&points[i], &points[j], &points[k])
                    != ts.contains(g[i], g[j], g[k])
                {
                    return false;
                }
            }
        }
    }
    true
}

type Bits = [u64];

fn test_bit(bits: &Bits, i: u32) -> bool {
    bits[(i / 64) as usize] >> (i % 64) & 1 == 1
}

/// Incidence tables of P²(K); lines share the indexing of points.
struct Plane {
    points: Vec<[u32; 3]>,
    words: usize,
    /// `line_bits[l * words..]`: points on line `l`.
    line_bits: Vec<u64>,
    /// Lines through each point.
    lines_through: Vec<Vec<u32>>,
}

impl Plane {
    fn new(ctx: &FieldCtx) -> Self {
        let n = plane_size(ctx.order());
        let words = n.div_ceil(64);
        let pts: Vec<ProjPoint<'_>> = plane_points(ctx).collect();
        let mut line_bits = vec![0u64; n * words];
        let mut lines_through = vec![Vec::new(); n];
        for (l, line) in pts.iter().enumerate() {
            let c = line.coords();
            for (i, p) in pts.iter().enumerate() {
                let v = p.coords();
                if (c[0] * v[0] + c[1] * v[1] + c[2] * v[2]).is_zero() {
                    line_bits[l * words + i / 64] |= 1 << (i % 64);
                    lines_through[i].push(l as u32);
                }
            }
        }
        Plane {
            points: pts.iter().map(|p| p.codes()).collect(),
            words,
            line_bits,
            lines_through,
        }
    }

    fn line(&self, l: u32) -> &Bits {
        let start = l as usize * self.words;
        &self.line_bits[start..start + self.words]
    }

    fn join(&self, a: u32, b: u32) -> u32 {
        *self.lines_through[a as usize]
            .iter()
            .find(|&&l| test_bit(self.line(l), b))
            .expect("two points span a line")
    }

    fn point<'f>(&self, ctx: &'f FieldCtx, i: u32) -> ProjPoint<'f> {
        ProjPoint::from_normalized_codes(ctx, self.points[i as usize])
            .expect("plane points are normalized")
    }
}

/// Third members of the triples through each pair of ground indices.
struct PairTriples {
    m: usize,
    thirds: Vec<Vec<u32>>,
}

impl PairTriples {
    fn new(ts: &TripleSystem) -> Self {
        let m = ts.ground().len();
        let pos: BTreeMap<i64, u32> = ts
            .ground()
            .iter()
            .enumerate()
            .map(|(i, &l)| (l, i as u32))
            .collect();
        let mut thirds = vec![Vec::new(); m * m];
        for t in ts.triples() {
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
        }
        PairTriples { m, thirds }
    }

    fn thirds(&self, a: u32, b: u32) -> &[u32] {
        &self.thirds[a as usize * self.m + b as usize]
    }
}

const UNPLACED: u32 = u32::MAX;

#[derive(Clone)]
struct State {
    pos: Vec<u32>,
    placed: Vec<u32>,
    /// `m × words` allowed-point sets.
    domains: Vec<u64>,
    /// Triples `{u, a, b}` with `a, b` placed, per label `u`.
    support: Vec<u32>,
}

struct Search<'a> {
    plane: &'a Plane,
    pairs: &'a PairTriples,
    m: usize,
    count_all: bool,
    stats: SearchStats,
    found: Vec<Vec<u32>>,
}

enum Pick {
    Dead,
    Done,
    Forced(u32, u32),
    Branch(u32),
}

impl Search<'_> {
    fn initial_state(&self) -> State {
        let w = self.plane.words;
        let n = self.plane.points.len();
        let mut full = vec![u64::MAX; w];
        if n % 64 != 0 {
            full[w - 1] = (1u64 << (n % 64)) - 1;
        }
        State {
            pos: vec![UNPLACED; self.m],
            placed: Vec::with_capacity(self.m),
            domains: full.repeat(self.m),
            support: vec![0; self.m],
        }
    }

    fn domain<'s>(&self, state: &'s State, u: u32) -> &'s Bits {
        let w = self.plane.words;
        &state.domains[u as usize * w..(u as usize + 1) * w]
    }

    /// Places `v` at `point` and narrows every other domain.
    fn place(&self, state: &mut State, v: u32, point: u32) -> bool {
        if state.pos[v as usize] != UNPLACED || !test_bit(self.domain(state, v), point) {
            return false;
        }
        let w = self.plane.words;
        let mut on_line = vec![false; self.m];
        for i in 0..state.placed.len() {
            let other = state.placed[i];
            let line = self
                .plane
                .line(self.plane.join(point, state.pos[other as usize]));
            let thirds = self.pairs.thirds(v, other);
            for &u in thirds {
                on_line[u as usize] = true;
            }
            for (u, &through) in on_line.iter().enumerate() {
                if state.pos[u] != UNPLACED || u as u32 == v {
                    continue;
                }
                let dom = &mut state.domains[u * w..(u + 1) * w];
                if through {
                    for (d, l) in dom.iter_mut().zip(line) {
                        *d &= l;
                    }
                    state.support[u] += 1;
                } else {
                    for (d, l) in dom.iter_mut().zip(line) {
                        *d &= !l;
                    }
                }
            }
            for &u in thirds {
                on_line[u as usize] = false;
            }
        }
        for u in 0..self.m {
            if state.pos[u] == UNPLACED && u as u32 != v {
                state.domains[u * w + (point / 64) as usize] &= !(1 << (point % 64));
            }
        }
        state.pos[v as usize] = point;
        state.placed.push(v);
        true
    }

    fn pick(&self, state: &State) -> Pick {
        let mut forced = None;
        let mut best: Option<(u32, u32)> = None;
        let mut any = false;
        for u in 0..self.m as u32 {
            if state.pos[u as usize] != UNPLACED {
                continue;
            }
            any = true;
            let dom = self.domain(state, u);
            let count: u32 = dom.iter().map(|d| d.count_ones()).sum();
            if count == 0 {
                return Pick::Dead;
            }
            if count == 1 && forced.is_none() {
                let word = dom.iter().position(|&d| d != 0).expect("one bit set");
                forced = Some((u, word as u32 * 64 + dom[word].trailing_zeros()));
            }
            let s = state.support[u as usize];
            if best.is_none_or(|(_, bs)| s > bs) {
                best = Some((u, s));
            }
        }
        if !any {
            return Pick::Done;
        }
        match forced {
            Some((u, p)) => Pick::Forced(u, p),
            None => Pick::Branch(best.expect("an unplaced label exists").0),
        }
    }

    /// Returns `false` once the search should stop.
    fn run(&mut self, state: State) -> bool {
        self.stats.nodes += 1;
        match self.pick(&state) {
            Pick::Dead => true,
            Pick::Done => {
                self.found.push(state.pos.clone());
                self.count_all
            }
            Pick::Forced(u, p) => {
                self.stats.forced += 1;
                let mut next = state;
                if self.place(&mut next, u, p) {
                    self.run(next)
                } else {
                    true
                }
            }
            Pick::Branch(u) => {
                let dom: Vec<u64> = self.domain(&state, u).to_vec();
                for (wi, &word) in dom.iter().enumerate() {
                    let mut bits = word;
                    while bits != 0 {
                        let p = wi as u32 * 64 + bits.trailing_zeros();
                        bits &= bits - 1;
                        let mut next = state.clone();
                        if self.place(&mut next, u, p) && !self.run(next) {
                            return false;
                        }
                    }
                }
                true
            }
        }
    }
}

/// A polynomial with integer coefficients; monomials are sorted lists of
/// variable indices (repeats are powers).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Polynomial {
    pub terms: BTreeMap<Vec<u32>, i64>,
}

impl Polynomial {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Renders as `x1*y2*z3 - x1*y3*z2 + ...` with the given variable names.
    pub fn render(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (mono, &coeff)) in self.terms.iter().enumerate() {
            let sign = if coeff < 0 { "-" } else { "+" };
            if i == 0 {
                if coeff < 0 {
                    out.push('-');
                }
            } else {
                out.push(' ');
                out.push_str(sign);
                out.push(' ');
            }
            let mag = coeff.unsigned_abs();
            let factors: Vec<&str> = mono.iter().map(|&v| names[v as usize].as_str()).collect();
            if factors.is_empty() {
                out.push_str(&mag.to_string());
            } else {
                if mag != 1 {
                    out.push_str(&format!("{mag}*"));
                }
                out.push_str(&factors.join("*"));
            }
        }
        out
    }
}

/// Vanishing and non-vanishing determinant conditions on the coordinates of
/// the dual points, ready for an external computer-algebra system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealizationIdeal {
    pub vars: Vec<String>,
    /// One determinant per triple.
    pub vanishing: Vec<Polynomial>,
    /// One determinant per 3-subset that is not a triple, to be saturated.
    pub nonvanishing: Vec<Polynomial>,
    pub normalization: Option<Normalization>,
}

#[derive(Clone, Copy)]
enum Entry {
    Var(u32),
    Const(i64),
}

fn var_name(axis: &str, label: i64) -> String {
    if label < 0 {
        format!("{axis}m{}", label.unsigned_abs())
    } else {
        format!("{axis}{label}")
    }
}

/// Expands the 3×3 determinant with the given rows by the Leibniz formula.
fn determinant(rows: [[Entry; 3]; 3]) -> Polynomial {
    const PERMS: [([usize; 3], i64); 6] = [
        ([0, 1, 2], 1),
        ([0, 2, 1], -1),
        ([1, 0, 2], -1),
        ([1, 2, 0], 1),
        ([2, 0, 1], 1),
        ([2, 1, 0], -1),
    ];
    let mut poly = Polynomial::default();
    for (perm, sign) in PERMS {
        let mut coeff = sign;
        let mut mono = Vec::with_capacity(3);
        for (r, &c) in perm.iter().enumerate() {
            match rows[r][c] {
                Entry::Var(v) => mono.push(v),
                Entry::Const(k) => coeff *= k,
            }
        }
        if coeff == 0 {
            continue;
        }
        mono.sort_unstable();
        let slot = poly.terms.entry(mono).or_insert(0);
        *slot += coeff;
    }
    poly.terms.retain(|_, c| *c != 0);
    poly
}

/// The realization ideal of `ts`: variables `x_l, y_l, z_l` per label, a
/// determinant per triple that must vanish and one per other 3-subset that
/// must not. With `normalize`, the labels fixed by [`normalization`] get
/// their constant coordinates substituted and drop out of the variable list.
pub fn export_ideal(ts: &TripleSystem, normalize: bool) -> Result<RealizationIdeal> {
    let g = ts.ground();
    let norm = if normalize {
        Some(normalization(ts)?)
    } else {
        None
    };
    let fixed: BTreeMap<usize, [u32; 3]> = norm
        .map(|n| n.fixed().into_iter().collect())
        .unwrap_or_default();
    // axis-major indices, so monomials sort as x*y*z
    let free: Vec<i64> = (0..g.len())
        .filter(|i| !fixed.contains_key(i))
        .map(|i| g[i])
        .collect();
    let nfree = free.len() as u32;
    let vars: Vec<String> = ["x", "y", "z"]
        .iter()
        .flat_map(|axis| free.iter().map(move |&l| var_name(axis, l)))
        .collect();
    let mut rows: Vec<[Entry; 3]> = Vec::with_capacity(g.len());
    let mut next = 0u32;
    for i in 0..g.len() {
        match fixed.get(&i) {
            Some(c) => rows.push(c.map(|v| Entry::Const(v as i64))),
            None => {
                rows.push([0, 1, 2].map(|axis| Entry::Var(axis * nfree + next)));
                next += 1;
            }
        }
    }
    let mut vanishing = Vec::new();
    let mut nonvanishing = Vec::new();
    for a in 0..g.len() {
        for b in a + 1..g.len() {
            for c in b + 1..g.len() {
                let det = determinant([rows[a], rows[b], rows[c]]);
                if ts.contains(g[a], g[b], g[c]) {
                    vanishing.push(det);
                } else {
                    nonvanishing.push(det);
                }
            }
        }
    }
    Ok(RealizationIdeal {
        vars,
        vanishing,
        nonvanishing,
        normalization: norm,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrange::{build_ceva, build_char2, build_char3};
    use crate::triples::{from_arrangement, make_mq, make_nq, make_projection_matroid};

    fn f(p: u32, n: u32) -> FieldCtx {
        FieldCtx::new(p, n, None).unwrap()
    }

    fn fano() -> TripleSystem {
        make_projection_matroid(3).unwrap()
    }

    fn ceva() -> TripleSystem {
        let f7 = f(7, 1);
        let a = build_ceva(&f7).unwrap();
        from_arrangement(&a, &a.audit().unwrap())
    }

    #[test]
    fn frames() {
        let fano = fano();
        let frame = find_frame(&fano).unwrap();
        assert_eq!(frame, [1, 2, 4, 7]);
        for i in 0..4 {
            for j in i + 1..4 {
                for k in j + 1..4 {
                    assert!(!fano.contains(frame[i], frame[j], frame[k]));
                }
            }
        }
        let m3 = make_mq(&f(3, 1)).unwrap();
        assert_eq!(find_frame(&m3), None);
        assert_eq!(
            normalization(&m3).unwrap(),
            Normalization::Collinear([0, 1, 2])
        );
        assert!(find_frame(&make_mq(&f(3, 2)).unwrap()).is_some());
        let two = TripleSystem::new(vec![0, 1], []).unwrap();
        assert_eq!(normalization(&two), Err(Error::GroundTooSmall(2)));
    }

    #[test]
    fn fano_realizations() {
        let fano = fano();
        let (f2, f3, f5) = (f(2, 1), f(3, 1), f(5, 1));
        let r = realize_over(&fano, &f2, true).unwrap();
        assert_eq!(r.status, Status::Realizable);
        // the frame determines everything: exactly one frame-fixed witness
        assert_eq!(r.witnesses.len(), 1);
        let mut pts: Vec<_> = r.witnesses[0].iter().map(|p| p.codes()).collect();
        pts.sort_unstable();
        let all: Vec<_> = plane_points(&f2).map(|p| p.codes()).collect();
        assert_eq!(pts, all);
        assert_eq!(
            realize_over(&fano, &f3, false).unwrap().status,
            Status::Unrealizable
        );
        assert_eq!(
            realize_over(&fano, &f5, false).unwrap().status,
            Status::Unrealizable
        );
    }

    #[test]
    fn ceva_realizations() {
        let ceva = ceva();
        let (f3, f4, f5) = (f(3, 1), f(2, 2), f(5, 1));
        for k in [&f3, &f4] {
            let r = realize_over(&ceva, k, false).unwrap();
            assert_eq!(r.status, Status::Realizable, "q={}", k.order());
            assert!(verify_witness(&ceva, &r.witnesses[0]));
        }
        assert_eq!(
            realize_over(&ceva, &f5, false).unwrap().status,
            Status::Unrealizable
        );
    }

    #[test]
    fn ceva_over_f3_misses_one_point() {
        // twelve of the thirteen points of P²(F3) dualize to the nine lines
        // avoiding a point; here the nine dual points avoid a line
        let f3 = f(3, 1);
        let r = realize_over(&ceva(), &f3, true).unwrap();
        assert!(!r.witnesses.is_empty());
        for w in &r.witnesses {
            let missing: Vec<_> = plane_points(&f3).filter(|p| !w.contains(p)).collect();
            assert_eq!(missing.len(), 4);
            assert!(collinear_points(&missing[0], &missing[1], &missing[2]));
            assert!(collinear_points(&missing[0], &missing[1], &missing[3]));
        }
    }

    #[test]
    fn single_triple_realizable_everywhere() {
        let ts = TripleSystem::new(vec![1, 2, 3], [[1, 2, 3]]).unwrap();
        for (p, n) in [(2, 1), (2, 2), (3, 1), (3, 2), (5, 1), (7, 1), (2, 3)] {
            let k = f(p, n);
            let r = realize_over(&ts, &k, false).unwrap();
            assert_eq!(r.status, Status::Realizable);
            assert_eq!(r.normalization.kind(), "collinear");
        }
    }

    #[test]
    fn triangle_fallback() {
        // three labels, no triple: any triangle
        let f2 = f(2, 1);
        let ts = TripleSystem::new(vec![0, 1, 2], []).unwrap();
        let r = realize_over(&ts, &f2, true).unwrap();
        assert_eq!(r.normalization, Normalization::Triangle([0, 1, 2]));
        assert_eq!(r.witnesses.len(), 1);
        // a pencil of three lines plus a fourth point forced off it
        let ts = TripleSystem::new(vec![0, 1, 2, 3], [[0, 1, 2]]).unwrap();
        let r = realize_over(&ts, &f2, true).unwrap();
        assert_eq!(r.normalization, Normalization::Triangle([0, 1, 3]));
        // 2 remaining points on the line through labels 0, 1 in P²(F2)
        assert_eq!(r.witnesses.len(), 1);
    }

    #[test]
    fn group_law_systems_realize_over_their_field() {
        for (p, n) in [(3, 2), (2, 3), (2, 4)] {
            let k = f(p, n);
            let ts = if p == 3 { make_mq(&k) } else { make_nq(&k) }.unwrap();
            let r = realize_over(&ts, &k, false).unwrap();
            assert_eq!(r.status, Status::Realizable);
            // the built arrangement is itself a realization
            let a = if p == 3 {
                build_char3(&k)
            } else {
                build_char2(&k)
            }
            .unwrap();
            assert!(verify_witness(&ts, &a.dual_points()));
        }
    }

    #[test]
    fn determinism() {
        let k = f(3, 2);
        let ts = make_mq(&k).unwrap();
        let a = realize_over(&ts, &k, true).unwrap();
        let b = realize_over(&ts, &k, true).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn witness_recheck_rejects_bad_points() {
        let fano = fano();
        let f2 = f(2, 1);
        let mut w = realize_over(&fano, &f2, false).unwrap().witnesses.remove(0);
        assert!(verify_witness(&fano, &w));
        w.swap(0, 1);
        assert!(!verify_witness(&fano, &w));
        w[0] = w[1];
        assert!(!verify_witness(&fano, &w));
    }

    #[test]
    fn ideal_shapes() {
        let single = TripleSystem::new(vec![1, 2, 3], [[1, 2, 3]]).unwrap();
        let ideal = export_ideal(&single, false).unwrap();
        assert_eq!(ideal.vanishing.len(), 1);
        assert!(ideal.nonvanishing.is_empty());
        assert_eq!(ideal.vanishing[0].terms.len(), 6);
        assert_eq!(
            ideal.vanishing[0].render(&ideal.vars),
            "x1*y2*z3 - x1*y3*z2 - x2*y1*z3 + x2*y3*z1 + x3*y1*z2 - x3*y2*z1"
        );

        let fano = fano();
        let ideal = export_ideal(&fano, false).unwrap();
        assert_eq!((ideal.vanishing.len(), ideal.nonvanishing.len()), (7, 28));
        assert_eq!(ideal.vars.len(), 21);
        assert_eq!(&ideal.vars[..2], ["x1", "x2"]);

        let ideal = export_ideal(&fano, true).unwrap();
        assert_eq!(ideal.vars.len(), 9);
        assert_eq!((ideal.vanishing.len(), ideal.nonvanishing.len()), (7, 28));
        // frame triangles become nonzero constants
        assert!(ideal
            .nonvanishing
            .iter()
            .any(|p| p.terms.keys().all(|m| m.is_empty())));
        assert!(ideal.vanishing.iter().all(|p| !p.is_zero()));
    }

    #[test]
    fn ideal_vanishes_on_a_realization() {
        // evaluate the exported determinants mod 2 on the Fano witness
        let fano = fano();
        let f2 = f(2, 1);
        let w = realize_over(&fano, &f2, false).unwrap().witnesses.remove(0);
        let ideal = export_ideal(&fano, false).unwrap();
        let values: Vec<i64> = (0..3)
            .flat_map(|axis| w.iter().map(move |p| p.codes()[axis] as i64))
            .collect();
        let eval = |poly: &Polynomial| {
            poly.terms
                .iter()
                .map(|(m, &c)| c * m.iter().map(|&v| values[v as usize]).product::<i64>())
                .sum::<i64>()
                .rem_euclid(2)
        };
        assert!(ideal.vanishing.iter().all(|p| eval(p) == 0));
        assert!(ideal.nonvanishing.iter().all(|p| eval(p) != 0));
    }
}
