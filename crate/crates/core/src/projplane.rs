//! The projective plane P²(K): points, lines, duality and incidence, the
//! cuspidal cubic with its chord–tangent group law, and plane cubics
//! through a point set.
//!
//! Homogeneous triples are normalized so that the first nonzero coordinate in
//! `(x, y, z)` order is 1. Comparison, hashing and ordering all use the
//! normalized encodings, so a point can be bucketed by its `[u32; 3]` codes.

use alloc::vec::Vec;
use core::fmt;

use crate::gf::{FieldCtx, FieldElem};
use crate::linalg;
use crate::{Error, Result};

fn normalize<'f>(ctx: &'f FieldCtx, coords: [FieldElem<'f>; 3]) -> Result<[u32; 3]> {
    for c in &coords {
        if !c.same_field(&ctx.zero()) {
            return Err(Error::FieldMismatch);
        }
    }
    let lead = coords
        .iter()
        .find(|c| !c.is_zero())
        .ok_or(Error::ZeroTriple)?;
    let inv = lead.inv()?;
    Ok(coords.map(|c| (c * inv).encode()))
}

fn is_normalized(codes: [u32; 3]) -> bool {
    codes.iter().find(|&&c| c != 0) == Some(&1)
}

fn cross<'f>(a: [FieldElem<'f>; 3], b: [FieldElem<'f>; 3]) -> [FieldElem<'f>; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn dot<'f>(a: [FieldElem<'f>; 3], b: [FieldElem<'f>; 3]) -> FieldElem<'f> {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// Determinant of the 3×3 matrix with the given rows.
pub fn det3<'f>(rows: [[FieldElem<'f>; 3]; 3]) -> FieldElem<'f> {
    dot(rows[0], cross(rows[1], rows[2]))
}

macro_rules! homogeneous {
    ($name:ident, $what:literal) => {
        #[doc = concat!("A normalized ", $what, " of P²(K).")]
        #[derive(Clone, Copy)]
        pub struct $name<'f> {
            ctx: &'f FieldCtx,
            codes: [u32; 3],
        }

        impl<'f> $name<'f> {
            /// Normalizes the triple; fails if it is zero.
            pub fn new(coords: [FieldElem<'f>; 3]) -> Result<Self> {
                let ctx = coords[0].ctx();
                Ok($name {
                    ctx,
                    codes: normalize(ctx, coords)?,
                })
            }

            /// From encoded coordinates, normalizing them.
            pub fn from_codes(ctx: &'f FieldCtx, codes: [u32; 3]) -> Result<Self> {
                let mut coords = [ctx.zero(); 3];
                for (c, &code) in coords.iter_mut().zip(&codes) {
                    *c = ctx.elem(code as u64)?;
                }
                Self::new(coords)
            }

            /// From encoded coordinates that must already be normalized.
            pub fn from_normalized_codes(ctx: &'f FieldCtx, codes: [u32; 3]) -> Result<Self> {
                for &code in &codes {
                    ctx.elem(code as u64)?;
                }
                if !is_normalized(codes) {
                    return Err(if codes == [0; 3] {
                        Error::ZeroTriple
                    } else {
                        Error::NotNormalized
                    });
                }
                Ok($name { ctx, codes })
            }

            pub fn ctx(&self) -> &'f FieldCtx {
                self.ctx
            }

            pub fn codes(&self) -> [u32; 3] {
                self.codes
            }

            pub fn coords(&self) -> [FieldElem<'f>; 3] {
                self.codes.map(|c| {
                    self.ctx
                        .elem(c as u64)
                        .expect("normalized codes are in range")
                })
            }
        }

        impl PartialEq for $name<'_> {
            fn eq(&self, other: &Self) -> bool {
                self.codes == other.codes && self.ctx.one().same_field(&other.ctx.one())
            }
        }

        impl Eq for $name<'_> {}

        impl core::hash::Hash for $name<'_> {
            fn hash<H: core::hash::Hasher>(&self, state: &mut H) {
                self.codes.hash(state);
            }
        }

        impl PartialOrd for $name<'_> {
            fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
                Some(self.cmp(other))
            }
        }

        impl Ord for $name<'_> {
            fn cmp(&self, other: &Self) -> core::cmp::Ordering {
                self.codes.cmp(&other.codes)
            }
        }

        impl fmt::Display for $name<'_> {
            /// `x:y:z` with encoded coordinates.
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}:{}:{}", self.codes[0], self.codes[1], self.codes[2])
            }
        }

        impl fmt::Debug for $name<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}({})", stringify!($name), self)
            }
        }
    };
}

homogeneous!(ProjPoint, "point");
homogeneous!(ProjLine, "line (coefficients of `ax + by + cz = 0`)");

impl<'f> ProjLine<'f> {
    /// Incidence `ax + by + cz = 0`. Panics on a field mismatch.
    pub fn contains(&self, point: &ProjPoint<'f>) -> bool {
        dot(self.coords(), point.coords()).is_zero()
    }
}

fn check_same(a: &FieldCtx, b: &FieldCtx) -> Result<()> {
    if a.one().same_field(&b.one()) {
        Ok(())
    } else {
        Err(Error::FieldMismatch)
    }
}

/// The common point of two distinct lines.
pub fn meet<'f>(l1: &ProjLine<'f>, l2: &ProjLine<'f>) -> Result<ProjPoint<'f>> {
    check_same(l1.ctx, l2.ctx)?;
    if l1 == l2 {
        return Err(Error::EqualLines);
    }
    ProjPoint::new(cross(l1.coords(), l2.coords()))
}

/// The line through two distinct points.
pub fn join<'f>(p1: &ProjPoint<'f>, p2: &ProjPoint<'f>) -> Result<ProjLine<'f>> {
    check_same(p1.ctx, p2.ctx)?;
    if p1 == p2 {
        return Err(Error::EqualPoints);
    }
    ProjLine::new(cross(p1.coords(), p2.coords()))
}

pub fn dual_point<'f>(line: &ProjLine<'f>) -> ProjPoint<'f> {
    ProjPoint {
        ctx: line.ctx,
        codes: line.codes,
    }
}

pub fn dual_line<'f>(point: &ProjPoint<'f>) -> ProjLine<'f> {
    ProjLine {
        ctx: point.ctx,
        codes: point.codes,
    }
}

/// Whether three points lie on one line (repeats allowed).
pub fn collinear_points<'f>(a: &ProjPoint<'f>, b: &ProjPoint<'f>, c: &ProjPoint<'f>) -> bool {
    det3([a.coords(), b.coords(), c.coords()]).is_zero()
}

/// Number of points of P²(F_q).
pub fn plane_size(q: u32) -> usize {
    let q = q as usize;
    q * q + q + 1
}

/// Position of a normalized triple in the lexicographic order of
/// [`plane_points`].
pub fn plane_index(q: u32, codes: [u32; 3]) -> usize {
    let q = q as usize;
    let [x, y, z] = codes.map(|c| c as usize);
    match (x, y) {
        (0, 0) => 0,
        (0, _) => 1 + z,
        _ => 1 + q + y * q + z,
    }
}

/// All points of P²(K) in lexicographic order of their encoded coordinates:
/// `(0:0:1)`, then `(0:1:z)`, then `(1:y:z)`.
pub fn plane_points(ctx: &FieldCtx) -> impl Iterator<Item = ProjPoint<'_>> + '_ {
    let q = ctx.order();
    let head = core::iter::once([0, 0, 1]);
    let mid = (0..q).map(|z| [0, 1, z]);
    let tail = (0..q).flat_map(move |y| (0..q).map(move |z| [1, y, z]));
    head.chain(mid)
        .chain(tail)
        .map(move |codes| ProjPoint { ctx, codes })
}

/// The cuspidal cubic `x³ − y²z = 0`, cusp at `(0:0:1)`, parametrized on its
/// smooth locus by `s ↦ (s : 1 : s³)`. With this chart three smooth points are
/// collinear exactly when their parameters sum to zero, and the parameter-0
/// point `O = (0:1:0)` is a flex.
#[derive(Debug, Clone, Copy)]
pub struct CuspidalCubic<'f> {
    ctx: &'f FieldCtx,
}

impl<'f> CuspidalCubic<'f> {
    pub fn new(ctx: &'f FieldCtx) -> Self {
        CuspidalCubic { ctx }
    }

    pub fn ctx(&self) -> &'f FieldCtx {
        self.ctx
    }

    pub fn cusp(&self) -> ProjPoint<'f> {
        ProjPoint {
            ctx: self.ctx,
            codes: [0, 0, 1],
        }
    }

    fn raw(&self, s: FieldElem<'f>) -> [FieldElem<'f>; 3] {
        [s, self.ctx.one(), s.pow(3)]
    }

    /// The point `(s : 1 : s³)`.
    pub fn point(&self, s: FieldElem<'f>) -> ProjPoint<'f> {
        ProjPoint::new(self.raw(s)).expect("y-coordinate is 1")
    }

    pub fn contains(&self, point: &ProjPoint<'f>) -> bool {
        self.form().eval(point).is_zero()
    }

    /// Parameter of a smooth point of the curve, `None` for the cusp and for
    /// points off the curve.
    pub fn parameter(&self, point: &ProjPoint<'f>) -> Option<FieldElem<'f>> {
        let [x, y, _] = point.coords();
        if y.is_zero() || !self.contains(point) {
            return None;
        }
        Some(x * y.inv().ok()?)
    }

    /// Determinant test on the rows `(s_i, 1, s_i³)`.
    pub fn collinear(
        &self,
        s1: FieldElem<'f>,
        s2: FieldElem<'f>,
        s3: FieldElem<'f>,
    ) -> Result<bool> {
        if s1 == s2 || s1 == s3 || s2 == s3 {
            return Err(Error::RepeatedParameters);
        }
        Ok(det3([self.raw(s1), self.raw(s2), self.raw(s3)]).is_zero())
    }

    /// Tangent line at the smooth point with parameter `s`, from the formal
    /// gradient `(3x², −2yz, −y²)`.
    pub fn tangent_line(&self, s: FieldElem<'f>) -> ProjLine<'f> {
        let [x, y, z] = self.raw(s);
        ProjLine::new([(x * x).scale(3), (y * z).scale(-2), -(y * y)])
            .expect("gradient of the curve is nonzero off the cusp")
    }

    /// Restricts `line` to the curve, giving `c s³ + a s + b` in the
    /// parameter, divides out the two known intersections and returns the
    /// remaining root.
    fn residual(
        &self,
        line: &ProjLine<'f>,
        r1: FieldElem<'f>,
        r2: FieldElem<'f>,
    ) -> Result<FieldElem<'f>> {
        let [a, b, c] = line.coords();
        // coefficients, high degree first
        let cubic = [c, self.ctx.zero(), a, b];
        let (quad, rem1) = synthetic_division(&cubic, r1);
        let (lin, rem2) = synthetic_division(&quad, r2);
        if !rem1.is_zero() || !rem2.is_zero() || lin[0].is_zero() {
            return Err(Error::Invariant(
                "line does not meet the curve as expected".into(),
            ));
        }
        Ok(-(lin[1] * lin[0].inv()?))
    }

    /// Parameter of the third intersection of the chord through two
    /// distinct smooth points.
    pub fn chord_third(&self, s1: FieldElem<'f>, s2: FieldElem<'f>) -> Result<FieldElem<'f>> {
        if s1 == s2 {
            return Err(Error::RepeatedParameters);
        }
        let line = join(&self.point(s1), &self.point(s2))?;
        self.residual(&line, s1, s2)
    }

    /// Parameter of the residual intersection of the tangent at `s`.
    pub fn tangent_residual(&self, s: FieldElem<'f>) -> FieldElem<'f> {
        self.residual(&self.tangent_line(s), s, s)
            .expect("the tangent meets the curve twice at its point")
    }

    fn third(&self, s1: FieldElem<'f>, s2: FieldElem<'f>) -> FieldElem<'f> {
        if s1 == s2 {
            self.tangent_residual(s1)
        } else {
            self.chord_third(s1, s2).expect("distinct parameters")
        }
    }

    /// Chord–tangent composition with `O` as neutral element: the residual
    /// of `s1, s2`, then the residual of that point and `O`.
    pub fn group_add(&self, s1: FieldElem<'f>, s2: FieldElem<'f>) -> FieldElem<'f> {
        let r = self.third(s1, s2);
        self.third(r, self.ctx.zero())
    }

    /// `x³ − y²z`.
    pub fn form(&self) -> CubicForm<'f> {
        let mut coeffs = [self.ctx.zero(); 10];
        coeffs[0] = self.ctx.one();
        coeffs[7] = -self.ctx.one();
        CubicForm::new(coeffs).expect("coefficients share a field")
    }
}

/// Divides a polynomial (coefficients high degree first) by `(s − r)`.
fn synthetic_division<'f>(
    coeffs: &[FieldElem<'f>],
    r: FieldElem<'f>,
) -> (Vec<FieldElem<'f>>, FieldElem<'f>) {
    let mut out = Vec::with_capacity(coeffs.len() - 1);
    let mut acc = coeffs[0];
    for &c in &coeffs[1..] {
        out.push(acc);
        acc = acc * r + c;
    }
    (out, acc)
}

/// Exponents `(x, y, z)` of the ten cubic monomials, in the coefficient order
/// of [`CubicForm`]: `x³, x²y, x²z, xy², xyz, xz², y³, y²z, yz², z³`.
pub const CUBIC_MONOMIALS: [[u32; 3]; 10] = [
    [3, 0, 0],
    [2, 1, 0],
    [2, 0, 1],
    [1, 2, 0],
    [1, 1, 1],
    [1, 0, 2],
    [0, 3, 0],
    [0, 2, 1],
    [0, 1, 2],
    [0, 0, 3],
];

/// A ternary cubic form.
#[derive(Clone, Copy, PartialEq, Eq)]
pub struct CubicForm<'f> {
    coeffs: [FieldElem<'f>; 10],
}

impl<'f> CubicForm<'f> {
    pub fn new(coeffs: [FieldElem<'f>; 10]) -> Result<Self> {
        if coeffs.iter().any(|c| !c.same_field(&coeffs[0])) {
            return Err(Error::FieldMismatch);
        }
        Ok(CubicForm { coeffs })
    }

    pub fn ctx(&self) -> &'f FieldCtx {
        self.coeffs[0].ctx()
    }

    pub fn coeffs(&self) -> [FieldElem<'f>; 10] {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn eval(&self, point: &ProjPoint<'f>) -> FieldElem<'f> {
        let v = point.coords();
        self.coeffs
            .iter()
            .zip(CUBIC_MONOMIALS)
            .fold(self.ctx().zero(), |acc, (&c, e)| {
                acc + c * v[0].pow(e[0] as u64) * v[1].pow(e[1] as u64) * v[2].pow(e[2] as u64)
            })
    }

    /// Formal partial derivative with respect to coordinate `var`,
    /// evaluated at `point`.
    pub fn partial(&self, var: usize, point: &ProjPoint<'f>) -> FieldElem<'f> {
        let v = point.coords();
        let mut acc = self.ctx().zero();
        for (&c, e) in self.coeffs.iter().zip(CUBIC_MONOMIALS) {
            if e[var] == 0 || c.is_zero() {
                continue;
            }
            let mut term = c.scale(e[var] as i64);
            for (k, &ek) in e.iter().enumerate() {
                let exp = if k == var { ek - 1 } else { ek };
                term = term * v[k].pow(exp as u64);
            }
            acc = acc + term;
        }
        acc
    }

    /// Rescales so that the first nonzero coefficient is 1.
    pub fn normalized(&self) -> Self {
        match self.coeffs.iter().find(|c| !c.is_zero()) {
            Some(lead) => {
                let inv = lead.inv().expect("nonzero");
                CubicForm {
                    coeffs: self.coeffs.map(|c| c * inv),
                }
            }
            None => *self,
        }
    }
}

impl fmt::Display for CubicForm<'_> {
    /// Terms as `<code>*x^a*y^b*z^c` joined by ` + `; `0` for the zero form.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (c, e) in self.coeffs.iter().zip(CUBIC_MONOMIALS) {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            if !c.is_one() {
                write!(f, "{c}*")?;
            }
            let mut factors = Vec::new();
            for (name, &k) in ["x", "y", "z"].iter().zip(&e) {
                match k {
                    0 => {}
                    1 => factors.push(alloc::string::String::from(*name)),
                    _ => factors.push(alloc::format!("{name}^{k}")),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CubicForm<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CubicForm({self})")
    }
}

/// A basis of the space of cubic forms vanishing at every given point,
/// from the kernel of the `#points × 10` evaluation matrix.
pub fn cubics_through<'f>(
    ctx: &'f FieldCtx,
    points: &[ProjPoint<'f>],
) -> Result<Vec<CubicForm<'f>>> {
    let mut matrix = Vec::with_capacity(points.len());
    for p in points {
        check_same(ctx, p.ctx)?;
        let v = p.coords();
        matrix.push(
            CUBIC_MONOMIALS
                .iter()
                .map(|e| v[0].pow(e[0] as u64) * v[1].pow(e[1] as u64) * v[2].pow(e[2] as u64))
                .collect::<Vec<_>>(),
        );
    }
    Ok(linalg::kernel(ctx, &matrix, 10)
        .into_iter()
        .map(|v| {
            let coeffs: [FieldElem<'f>; 10] = v.try_into().expect("ten coefficients");
            CubicForm { coeffs }.normalized()
        })
        .collect())
}

/// Rank of the evaluation matrix of the cubic monomials at `points`.
pub fn cubic_conditions(ctx: &FieldCtx, points: &[ProjPoint<'_>]) -> usize {
    let matrix: Vec<Vec<_>> = points
        .iter()
        .map(|p| {
            let v = p.coords();
            CUBIC_MONOMIALS
                .iter()
                .map(|e| v[0].pow(e[0] as u64) * v[1].pow(e[1] as u64) * v[2].pow(e[2] as u64))
                .collect()
        })
        .collect();
    linalg::rank(ctx, &matrix, 10)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CubicKind {
    /// No K-rational singular point.
    Smooth,
    /// One singular point with a tangent cone of two distinct lines;
    /// `split` when both are defined over K.
    Node { split: bool },
    /// One singular point whose tangent cone is a double line.
    Cusp,
    /// Several singular points, or a vanishing tangent cone.
    Degenerate,
}

impl fmt::Display for CubicKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CubicKind::Smooth => "smooth",
            CubicKind::Node { split: true } => "node (split)",
            CubicKind::Node { split: false } => "node (non-split)",
            CubicKind::Cusp => "cusp",
            CubicKind::Degenerate => "degenerate",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubicClass<'f> {
    pub kind: CubicKind,
    pub singular_points: Vec<ProjPoint<'f>>,
}

/// Bivariate polynomial in `(u, v)` of degree ≤ 3: `c[a][b]` is the
/// coefficient of `u^a v^b`.
type Bivariate<'f> = [[FieldElem<'f>; 4]; 4];

fn bivariate_mul_linear<'f>(
    ctx: &'f FieldCtx,
    poly: &Bivariate<'f>,
    lin: [FieldElem<'f>; 3],
) -> Bivariate<'f> {
    // lin = lin[0] + lin[1] u + lin[2] v
    let mut out = [[ctx.zero(); 4]; 4];
    for a in 0..4 {
        for b in 0..4 {
            let c = poly[a][b];
            if c.is_zero() {
                continue;
            }
            out[a][b] = out[a][b] + c * lin[0];
            if a < 3 {
                out[a + 1][b] = out[a + 1][b] + c * lin[1];
            }
            if b < 3 {
                out[a][b + 1] = out[a][b + 1] + c * lin[2];
            }
        }
    }
    out
}

/// Quadratic part `(α, β, γ)` of `f(P + u e_i + v e_j)`, where `e_i, e_j` are
/// the two unit vectors other than the one at the leading 1 of `P`.
fn tangent_cone<'f>(f: &CubicForm<'f>, point: &ProjPoint<'f>) -> [FieldElem<'f>; 3] {
    let ctx = f.ctx();
    let p = point.coords();
    let lead = p.iter().position(|c| !c.is_zero()).expect("nonzero point");
    let others: Vec<usize> = (0..3).filter(|&k| k != lead).collect();
    let linear: [[FieldElem<'f>; 3]; 3] = core::array::from_fn(|m| {
        let mut l = [p[m], ctx.zero(), ctx.zero()];
        if m == others[0] {
            l[1] = ctx.one();
        }
        if m == others[1] {
            l[2] = ctx.one();
        }
        l
    });
    let mut total = [[ctx.zero(); 4]; 4];
    for (c, e) in f.coeffs.iter().zip(CUBIC_MONOMIALS) {
        if c.is_zero() {
            continue;
        }
        let mut term = [[ctx.zero(); 4]; 4];
        term[0][0] = *c;
        for (m, &k) in e.iter().enumerate() {
            for _ in 0..k {
                term = bivariate_mul_linear(ctx, &term, linear[m]);
            }
        }
        for a in 0..4 {
            for b in 0..4 {
                total[a][b] = total[a][b] + term[a][b];
            }
        }
    }
    [total[2][0], total[1][1], total[0][2]]
}

/// Singular points over K and the type of the singularity.
pub fn classify_cubic<'f>(f: &CubicForm<'f>) -> Result<CubicClass<'f>> {
    if f.is_zero() {
        return Err(Error::ZeroForm);
    }
    let ctx = f.ctx();
    let singular_points: Vec<ProjPoint<'f>> = plane_points(ctx)
        .filter(|p| f.eval(p).is_zero() && (0..3).all(|k| f.partial(k, p).is_zero()))
        .collect();
    let kind = match singular_points.as_slice() {
        [] => CubicKind::Smooth,
        [point] => {
            let [alpha, beta, gamma] = tangent_cone(f, point);
            if alpha.is_zero() && beta.is_zero() && gamma.is_zero() {
                CubicKind::Degenerate
            } else {
                let square = if ctx.characteristic() == 2 {
                    beta.is_zero()
                } else {
                    (beta * beta - (alpha * gamma).scale(4)).is_zero()
                };
                if square {
                    CubicKind::Cusp
                } else {
                    let split = gamma.is_zero()
                        || ctx
                            .elements()
                            .any(|t| (alpha + beta * t + gamma * t * t).is_zero());
                    CubicKind::Node { split }
                }
            }
        }
        _ => CubicKind::Degenerate,
    };
    Ok(CubicClass {
        kind,
        singular_points,
    })
}
