//! Line arrangements dual to points of the cuspidal cubic, and an exact
//! audit of their multiple points.
//!
//! The line for a parameter `s` is the dual of the curve point
//! `(s : 1 : s³)`, i.e. `s·x + y + s³·z = 0`, labelled by the encoding of
//! `s`. Three such lines are concurrent exactly when the three parameters
//! are distinct and sum to zero.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec::Vec;

use crate::gf::FieldCtx;
use crate::projplane::{dual_line, dual_point, meet, CuspidalCubic, ProjLine, ProjPoint};
use crate::{Error, Result};

/// A labelled, ordered list of distinct lines over one field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrangement<'f> {
    ctx: &'f FieldCtx,
    labels: Vec<i64>,
    lines: Vec<ProjLine<'f>>,
}

impl<'f> Arrangement<'f> {
    /// Checks that labels are unique and lines pairwise distinct.
    pub fn new(ctx: &'f FieldCtx, records: Vec<(i64, ProjLine<'f>)>) -> Result<Self> {
        let mut by_label = BTreeSet::new();
        let mut by_line: BTreeMap<[u32; 3], i64> = BTreeMap::new();
        for (label, line) in &records {
            if !line.ctx().one().same_field(&ctx.one()) {
                return Err(Error::FieldMismatch);
            }
            if !by_label.insert(*label) {
                return Err(Error::DuplicateLabel(*label));
            }
            if let Some(&other) = by_line.get(&line.codes()) {
                return Err(Error::DuplicateLine(other, *label));
            }
            by_line.insert(line.codes(), *label);
        }
        let (labels, lines) = records.into_iter().unzip();
        Ok(Arrangement { ctx, labels, lines })
    }

    pub fn ctx(&self) -> &'f FieldCtx {
        self.ctx
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    pub fn labels(&self) -> &[i64] {
        &self.labels
    }

    pub fn lines(&self) -> &[ProjLine<'f>] {
        &self.lines
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, ProjLine<'f>)> + '_ {
        self.labels.iter().copied().zip(self.lines.iter().copied())
    }

    /// The dual point of every line, in arrangement order.
    pub fn dual_points(&self) -> Vec<ProjPoint<'f>> {
        self.lines.iter().map(dual_point).collect()
    }

    /// Intersects every pair of lines and groups the results by point.
    pub fn audit(&self) -> Result<SingularitySpectrum<'f>> {
        let n = self.lines.len();
        if n < 2 {
            return Err(Error::TooFewLines(2));
        }
        let mut buckets: BTreeMap<ProjPoint<'f>, BTreeSet<usize>> = BTreeMap::new();
        for i in 0..n {
            for j in i + 1..n {
                let p = meet(&self.lines[i], &self.lines[j])?;
                let set = buckets.entry(p).or_default();
                set.insert(i);
                set.insert(j);
            }
        }
        let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
        let mut points = Vec::with_capacity(buckets.len());
        for (point, set) in buckets {
            let through: Vec<usize> = (0..n).filter(|&i| self.lines[i].contains(&point)).collect();
            if through.len() != set.len() || !through.iter().all(|i| set.contains(i)) {
                return Err(Error::Invariant(format!(
                    "point {point} lies on {} lines but {} were recorded",
                    through.len(),
                    set.len()
                )));
            }
            *counts.entry(set.len()).or_default() += 1;
            points.push(MultiplePoint {
                point,
                labels: through.iter().map(|&i| self.labels[i]).collect(),
            });
        }
        let pairs: usize = counts.iter().map(|(&k, &t)| k * (k - 1) / 2 * t).sum();
        if pairs != n * (n - 1) / 2 {
            return Err(Error::Invariant(format!(
                "multiple points account for {pairs} line pairs, expected {}",
                n * (n - 1) / 2
            )));
        }
        Ok(SingularitySpectrum {
            line_count: n,
            counts,
            points,
        })
    }

    /// Checks an `(n_r, b_k)`-style configuration: every line carries exactly
    /// `r` multiple points and every multiple point has multiplicity `k`.
    pub fn check_configuration(
        &self,
        spectrum: &SingularitySpectrum<'f>,
        r: usize,
        k: usize,
    ) -> ConfigurationReport {
        let mut per_line: BTreeMap<i64, usize> = self.labels.iter().map(|&l| (l, 0)).collect();
        let mut violations = Vec::new();
        for mp in &spectrum.points {
            for l in &mp.labels {
                *per_line
                    .get_mut(l)
                    .expect("audited labels belong to the arrangement") += 1;
            }
            if mp.labels.len() != k {
                violations.push(Violation::PointMultiplicity {
                    point: mp.point.codes(),
                    found: mp.labels.len(),
                });
            }
        }
        for &label in &self.labels {
            let found = per_line[&label];
            if found != r {
                violations.push(Violation::LineRichness { label, found });
            }
        }
        ConfigurationReport { r, k, violations }
    }

    /// Recognizes arrangements whose dual points are smooth points of the
    /// cuspidal cubic forming all of K or all of K*.
    pub fn cusp_construction(&self) -> Option<CuspConstruction> {
        let curve = CuspidalCubic::new(self.ctx);
        let mut params = BTreeSet::new();
        for line in &self.lines {
            params.insert(curve.parameter(&dual_point(line))?.encode());
        }
        let q = self.ctx.order() as usize;
        let full = params.len() == q;
        let punctured = params.len() == q - 1 && !params.contains(&0);
        match self.ctx.characteristic() {
            3 if full => Some(CuspConstruction::Char3),
            2 if punctured && q >= 4 => Some(CuspConstruction::Char2),
            p if p >= 5 && full => Some(CuspConstruction::Generic),
            _ => None,
        }
    }
}

/// The three cubic-dual constructions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CuspConstruction {
    /// All of K, characteristic 3.
    Char3,
    /// K*, characteristic 2.
    Char2,
    /// All of K, characteristic at least 5.
    Generic,
}

impl CuspConstruction {
    pub fn name(&self) -> &'static str {
        match self {
            CuspConstruction::Char3 => "char3",
            CuspConstruction::Char2 => "char2",
            CuspConstruction::Generic => "generic",
        }
    }

    /// Exact `(t₂, t₃)` for field order `q`, from counting the zero-sum
    /// 3-subsets of the parameter set.
    pub fn predicted(&self, q: u64) -> (u64, u64) {
        match self {
            CuspConstruction::Char3 => (0, q * (q - 1) / 6),
            CuspConstruction::Char2 => (0, (q - 1) * (q - 2) / 6),
            // a ≠ 0 pairs with -2a only through a tangent, giving q-1 double
            // points; the rest of the C(q,2) pairs group into triples
            CuspConstruction::Generic => (q - 1, (q - 1) * (q - 2) / 6),
        }
    }
}

/// `s·x + y + s³·z = 0` for every `s` in K (or K*), labelled by encoding.
fn dual_of_cusp_points<'f>(ctx: &'f FieldCtx, skip_zero: bool) -> Result<Arrangement<'f>> {
    let curve = CuspidalCubic::new(ctx);
    let records = ctx
        .elements()
        .filter(|s| !(skip_zero && s.is_zero()))
        .map(|s| (s.encode() as i64, dual_line(&curve.point(s))))
        .collect();
    Arrangement::new(ctx, records)
}

/// The q lines dual to all points of K on the curve, characteristic 3.
pub fn build_char3(ctx: &FieldCtx) -> Result<Arrangement<'_>> {
    if ctx.characteristic() != 3 {
        return Err(Error::WrongCharacteristic {
            expected: "3",
            found: ctx.characteristic(),
        });
    }
    dual_of_cusp_points(ctx, false)
}

/// The q − 1 lines dual to the points of K*, characteristic 2 and q ≥ 4.
pub fn build_char2(ctx: &FieldCtx) -> Result<Arrangement<'_>> {
    if ctx.characteristic() != 2 {
        return Err(Error::WrongCharacteristic {
            expected: "2",
            found: ctx.characteristic(),
        });
    }
    if ctx.order() < 4 {
        return Err(Error::FieldTooSmall);
    }
    dual_of_cusp_points(ctx, true)
}

/// The q lines dual to all points of K, characteristic at least 5.
pub fn build_generic(ctx: &FieldCtx) -> Result<Arrangement<'_>> {
    if ctx.characteristic() < 5 {
        return Err(Error::WrongCharacteristic {
            expected: ">= 5",
            found: ctx.characteristic(),
        });
    }
    dual_of_cusp_points(ctx, false)
}

/// The nine lines of `(x³ − y³)(x³ − z³)(z³ − y³) = 0`, over a field with a
/// primitive cube root of unity `ω`: `x = ωⁱy`, `x = ωⁱz`, `z = ωⁱy`,
/// labelled 0..9 in that order.
pub fn build_ceva(ctx: &FieldCtx) -> Result<Arrangement<'_>> {
    let w = ctx
        .primitive_cube_root_of_unity()
        .ok_or(Error::NoCubeRootOfUnity)?;
    let (zero, one) = (ctx.zero(), ctx.one());
    let mut records = Vec::with_capacity(9);
    let mut power = one;
    let mut powers = Vec::new();
    for _ in 0..3 {
        powers.push(power);
        power = power * w;
    }
    for (family, label_base) in [(0usize, 0i64), (1, 3), (2, 6)] {
        for (i, &wi) in powers.iter().enumerate() {
            let coords = match family {
                0 => [one, -wi, zero],
                1 => [one, zero, -wi],
                _ => [zero, -wi, one],
            };
            records.push((label_base + i as i64, ProjLine::new(coords)?));
        }
    }
    Arrangement::new(ctx, records)
}

/// A point where at least two lines meet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplePoint<'f> {
    pub point: ProjPoint<'f>,
    /// Labels of the lines through the point, in arrangement order.
    pub labels: Vec<i64>,
}

/// The counts `t_k` of points of multiplicity exactly `k`, with the points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularitySpectrum<'f> {
    pub line_count: usize,
    pub counts: BTreeMap<usize, usize>,
    /// Sorted by normalized coordinates.
    pub points: Vec<MultiplePoint<'f>>,
}

impl SingularitySpectrum<'_> {
    pub fn t(&self, k: usize) -> usize {
        self.counts.get(&k).copied().unwrap_or(0)
    }

    /// `t_k = 0` for every `k ≠ 3`.
    pub fn only_triple_points(&self) -> bool {
        self.counts.iter().all(|(&k, &t)| k == 3 || t == 0)
    }

    /// `t_k = 0` for every `k ∉ {2, 3}`.
    pub fn at_most_triple(&self) -> bool {
        self.counts.iter().all(|(&k, &t)| k <= 3 || t == 0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// A line carries `found` multiple points instead of `r`.
    LineRichness { label: i64, found: usize },
    /// A multiple point of multiplicity `found` instead of `k`.
    PointMultiplicity { point: [u32; 3], found: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigurationReport {
    pub r: usize,
    pub k: usize,
    pub violations: Vec<Violation>,
}

impl ConfigurationReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}
