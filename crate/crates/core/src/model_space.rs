//! The simply connected model plane `S_K` of constant curvature `K`.
//!
//! Points are stored in a single quadratic-form embedding in three
//! coordinates `(x0, x1, x2)`:
//!
//! * `K > 0`: the sphere `K (x0^2 + x1^2 + x2^2) = 1`,
//! * `K < 0`: the upper sheet `|K| (x0^2 - x1^2 - x2^2) = 1`, `x0 > 0`,
//! * `K = 0`: the affine chart `x0 = 1`.
//!
//! With `G(x, y) = sgn(K) x0 y0 + x1 y1 + x2 y2` every point satisfies
//! `K G(p, p) = 1` (for `K != 0`) and the distance obeys
//! `ver_K(d(p, q)) = G(q - p, q - p) / 2`, which stays accurate for close
//! points and for `K` near zero.

use std::fmt;

use crate::error::{GeomError, Result};
use crate::scalar::Real;
use crate::trig;

/// Sign class of a curvature value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CurvatureSign {
    Negative,
    Zero,
    Positive,
}

/// A finite curvature `K` of a model plane.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Curvature<F>(F);

impl<F: Real> Curvature<F> {
    pub fn new(k: F) -> Result<Self> {
        if k.is_finite() {
            Ok(Self(k))
        } else {
            Err(GeomError::NonFiniteCurvature(k.to_f64_lossy()))
        }
    }

    #[inline]
    pub fn value(self) -> F {
        self.0
    }

    pub fn sign(self) -> CurvatureSign {
        if self.0 > F::zero() {
            CurvatureSign::Positive
        } else if self.0 < F::zero() {
            CurvatureSign::Negative
        } else {
            CurvatureSign::Zero
        }
    }

    /// Diameter `pi / sqrt(K)` of the model plane, infinite for `K <= 0`.
    pub fn diameter(self) -> F {
        if self.0 > F::zero() {
            F::PI() / self.0.sqrt()
        } else {
            F::infinity()
        }
    }

    /// `2 pi / sqrt(K)`, the perimeter bound for comparison triangles.
    pub fn perimeter_limit(self) -> F {
        F::lit(2.0) * self.diameter()
    }

    #[inline]
    pub fn sn(self, x: F) -> F {
        trig::sn(self.0, x)
    }
    #[inline]
    pub fn cs(self, x: F) -> F {
        trig::cs(self.0, x)
    }
    #[inline]
    pub fn ver(self, x: F) -> F {
        trig::ver(self.0, x)
    }
    #[inline]
    pub fn ver_inv(self, v: F) -> F {
        trig::ver_inv(self.0, v)
    }

    fn s0(self) -> F {
        match self.sign() {
            CurvatureSign::Positive => F::one(),
            CurvatureSign::Negative => -F::one(),
            CurvatureSign::Zero => F::zero(),
        }
    }

    /// The bilinear form `G` of the embedding.
    #[inline]
    pub fn form(self, a: &[F; 3], b: &[F; 3]) -> F {
        self.s0() * a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
    }

    /// Base point `o`: `(1/sqrt|K|, 0, 0)`, or `(1, 0, 0)` when `K = 0`.
    pub fn origin_coords(self) -> [F; 3] {
        let x0 = if self.0 == F::zero() {
            F::one()
        } else {
            F::one() / self.0.abs().sqrt()
        };
        [x0, F::zero(), F::zero()]
    }
}

impl<F: Real> fmt::Display for Curvature<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K={}", self.0)
    }
}

/// A point of `S_K` in the quadratic-form embedding.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelPoint<F> {
    coords: [F; 3],
    curvature: Curvature<F>,
}

fn sub<F: Real>(a: &[F; 3], b: &[F; 3]) -> [F; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn scale<F: Real>(s: F, a: &[F; 3]) -> [F; 3] {
    [s * a[0], s * a[1], s * a[2]]
}

fn axpy<F: Real>(s: F, a: &[F; 3], b: &[F; 3]) -> [F; 3] {
    [s * a[0] + b[0], s * a[1] + b[1], s * a[2] + b[2]]
}

impl<F: Real> ModelPoint<F> {
    /// Validates `coords` against the embedding, projecting small drift back.
    pub fn new(coords: [F; 3], curvature: Curvature<F>) -> Result<Self> {
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(GeomError::InvalidEmbedding {
                residual: f64::INFINITY,
            });
        }
        let k = curvature.value();
        if k == F::zero() {
            let residual = coords[0] - F::one();
            if residual.abs() > F::REJECT_TOL {
                return Err(GeomError::InvalidEmbedding {
                    residual: residual.to_f64_lossy(),
                });
            }
            return Ok(Self {
                coords: [F::one(), coords[1], coords[2]],
                curvature,
            });
        }
        let norm = k * curvature.form(&coords, &coords);
        let residual = norm - F::one();
        if residual.abs() > F::REJECT_TOL || (k < F::zero() && coords[0] <= F::zero()) {
            return Err(GeomError::InvalidEmbedding {
                residual: residual.to_f64_lossy(),
            });
        }
        let coords = if residual.abs() > F::RENORM_TOL {
            scale(F::one() / norm.sqrt(), &coords)
        } else {
            coords
        };
        Ok(Self { coords, curvature })
    }

    /// The base point `o` of the chart.
    pub fn origin(curvature: Curvature<F>) -> Self {
        Self {
            coords: curvature.origin_coords(),
            curvature,
        }
    }

    /// Geodesic polar coordinates about `o`: distance `rho`, direction `theta`
    /// measured from the `x1` axis.
    pub fn from_polar(curvature: Curvature<F>, rho: F, theta: F) -> Self {
        let o = curvature.origin_coords();
        let s = curvature.sn(rho);
        let c = curvature.cs(rho);
        let coords = [c * o[0], s * theta.cos(), s * theta.sin()];
        if curvature.value() == F::zero() {
            return Self {
                coords: [F::one(), coords[1], coords[2]],
                curvature,
            };
        }
        Self::new(coords, curvature).expect("polar point lies on the quadric")
    }

    /// Point of the flat plane with Cartesian coordinates `(x, y)`.
    pub fn planar(x: F, y: F) -> Self {
        Self {
            coords: [F::one(), x, y],
            curvature: Curvature(F::zero()),
        }
    }

    #[inline]
    pub fn coords(&self) -> [F; 3] {
        self.coords
    }

    #[inline]
    pub fn curvature(&self) -> Curvature<F> {
        self.curvature
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.curvature.value() == other.curvature.value() {
            Ok(())
        } else {
            Err(GeomError::CurvatureMismatch(
                self.curvature.value().to_f64_lossy(),
                other.curvature.value().to_f64_lossy(),
            ))
        }
    }

    /// Distance in `S_K`.
    pub fn distance(&self, other: &Self) -> Result<F> {
        self.check_same(other)?;
        Ok(self.distance_unchecked(other))
    }

    pub(crate) fn distance_unchecked(&self, other: &Self) -> F {
        let d = sub(&other.coords, &self.coords);
        let q = self.curvature.form(&d, &d);
        self.curvature.ver_inv(q / F::lit(2.0))
    }

    /// Unnormalized tangent vector at `self` pointing toward `q`.
    pub fn tangent_toward(&self, q: &Self) -> [F; 3] {
        let k = self.curvature.value();
        let d = sub(&q.coords, &self.coords);
        if k == F::zero() {
            return [F::zero(), d[1], d[2]];
        }
        let g = self.curvature.form(&self.coords, &d);
        axpy(-k * g, &self.coords, &d)
    }

    /// Length of a tangent vector in the embedding form.
    pub fn tangent_norm(&self, v: &[F; 3]) -> F {
        self.curvature.form(v, v).max(F::zero()).sqrt()
    }

    /// `exp_p(t u)` for a unit tangent vector `u` at `self`.
    pub fn exp(&self, u: &[F; 3], t: F) -> Result<Self> {
        let c = self.curvature;
        let coords = axpy(c.sn(t), u, &scale(c.cs(t), &self.coords));
        Self::new(coords, c)
    }

    /// Unit tangent at `self` obtained by rotating `u` by a quarter turn.
    ///
    /// The orientation is the one for which, at `o`, `e1` turns into `e2`.
    pub fn rotate_quarter(&self, u: &[F; 3]) -> [F; 3] {
        let k = self.curvature.value();
        let p = &self.coords;
        if k == F::zero() {
            return [F::zero(), -u[2], u[1]];
        }
        // n = sqrt|K| J (p x u), with J = diag(sgn K, 1, 1) the form matrix
        let s0 = self.curvature.s0();
        let sq = k.abs().sqrt();
        [
            s0 * sq * (p[1] * u[2] - p[2] * u[1]),
            sq * (p[2] * u[0] - p[0] * u[2]),
            sq * (p[0] * u[1] - p[1] * u[0]),
        ]
    }
}

/// Distance in `S_K` between two points of the same model plane.
pub fn distance<F: Real>(p: &ModelPoint<F>, q: &ModelPoint<F>) -> Result<F> {
    p.distance(q)
}

/// Point at arclength `t d(p, q)` from `p` along the geodesic `pq`.
pub fn geodesic_eval<F: Real>(p: &ModelPoint<F>, q: &ModelPoint<F>, t: F) -> Result<ModelPoint<F>> {
    p.check_same(q)?;
    let c = p.curvature;
    let d = p.distance_unchecked(q);
    if t == F::zero() || d == F::zero() {
        return Ok(*p);
    }
    if t == F::one() {
        return Ok(*q);
    }
    let sd = c.sn(d);
    if c.value() > F::zero() && sd * c.value().sqrt() < F::RENORM_TOL {
        return Err(GeomError::Antipodal);
    }
    let a = c.sn(d * (F::one() - t)) / sd;
    let b = c.sn(d * t) / sd;
    let coords = axpy(a, &p.coords, &scale(b, &q.coords));
    ModelPoint::new(coords, c)
}

/// Angle at `p` between the geodesics `pq` and `pr`, in `[0, pi]`.
pub fn angle_at<F: Real>(p: &ModelPoint<F>, q: &ModelPoint<F>, r: &ModelPoint<F>) -> Result<F> {
    p.check_same(q)?;
    p.check_same(r)?;
    let u = p.tangent_toward(q);
    let w = p.tangent_toward(r);
    let nu = p.tangent_norm(&u);
    let nw = p.tangent_norm(&w);
    if nu == F::zero() || nw == F::zero() {
        return Err(GeomError::DegenerateVertex);
    }
    let u = scale(F::one() / nu, &u);
    let w = scale(F::one() / nw, &w);
    let diff = sub(&u, &w);
    let sum = axpy(F::one(), &u, &w);
    Ok(F::lit(2.0) * p.tangent_norm(&diff).atan2(p.tangent_norm(&sum)))
}

/// One of the three sides of a [`ModelTriangle`].
///
/// Vertex `A` is opposite side `a = BC`, and so on. Sides are traversed
/// `B -> C`, `C -> A` and `A -> B`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    A,
    B,
    C,
}

impl Side {
    pub const ALL: [Side; 3] = [Side::A, Side::B, Side::C];
}

/// A triangle of `S_K` given by its side lengths.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelTriangle<F> {
    pub a: F,
    pub b: F,
    pub c: F,
    pub curvature: Curvature<F>,
    /// Angles at `A`, `B`, `C`.
    pub alpha: F,
    pub beta: F,
    pub gamma: F,
}

/// Angle opposite `a` in a triangle with adjacent sides `b`, `c`.
fn opposite_angle<F: Real>(k: Curvature<F>, a: F, b: F, c: F) -> F {
    let num = k.ver(a) - k.ver(b - c);
    let den = F::lit(2.0) * k.sn(b) * k.sn(c);
    let s = (num / den).max(F::zero()).sqrt().min(F::one());
    F::lit(2.0) * s.asin()
}

/// Length of the third side given two sides and their included angle.
pub fn side_from_sas<F: Real>(k: Curvature<F>, b: F, c: F, alpha: F) -> F {
    let h = (alpha / F::lit(2.0)).sin();
    let v = k.ver(b - c) + F::lit(2.0) * k.sn(b) * k.sn(c) * h * h;
    k.ver_inv(v)
}

/// The comparison triangle in `S_K` with side lengths `a, b, c`.
pub fn comparison_triangle<F: Real>(a: F, b: F, c: F, k: Curvature<F>) -> Result<ModelTriangle<F>> {
    let lossy = |x: F| x.to_f64_lossy();
    if !(a >= F::zero() && b >= F::zero() && c >= F::zero()) || a > b + c || b > a + c || c > a + b
    {
        return Err(GeomError::TriangleInequality(lossy(a), lossy(b), lossy(c)));
    }
    let perimeter = a + b + c;
    if k.value() > F::zero() && perimeter >= k.perimeter_limit() {
        return Err(GeomError::PerimeterTooLarge {
            perimeter: lossy(perimeter),
            limit: lossy(k.perimeter_limit()),
        });
    }
    if a == F::zero() || b == F::zero() || c == F::zero() {
        return Err(GeomError::DegenerateVertex);
    }
    Ok(ModelTriangle {
        a,
        b,
        c,
        curvature: k,
        alpha: opposite_angle(k, a, b, c),
        beta: opposite_angle(k, b, c, a),
        gamma: opposite_angle(k, c, a, b),
    })
}

impl<F: Real> ModelTriangle<F> {
    /// Realizes the vertices: `A = o`, `B` on the `x1` axis, `C` above it.
    pub fn vertices(&self) -> [ModelPoint<F>; 3] {
        let k = self.curvature;
        [
            ModelPoint::origin(k),
            ModelPoint::from_polar(k, self.c, F::zero()),
            ModelPoint::from_polar(k, self.b, self.alpha),
        ]
    }

    pub fn side_length(&self, side: Side) -> F {
        match side {
            Side::A => self.a,
            Side::B => self.b,
            Side::C => self.c,
        }
    }

    /// Distance from the vertex opposite `side` to the point at fraction `t`
    /// along that side, from the law of cosines.
    pub fn vertex_to_side(&self, side: Side, t: F) -> F {
        // (length to the start of the side, side length, angle at the start)
        let (adj, len, angle) = match side {
            Side::A => (self.c, self.a, self.beta),
            Side::B => (self.a, self.b, self.gamma),
            Side::C => (self.b, self.c, self.alpha),
        };
        side_from_sas(self.curvature, adj, len * t, angle)
    }
}

/// Point at fraction `t` along `side` of the realized triangle.
pub fn comparison_point<F: Real>(
    tri: &ModelTriangle<F>,
    side: Side,
    t: F,
) -> Result<ModelPoint<F>> {
    let [a, b, c] = tri.vertices();
    let (p, q) = match side {
        Side::A => (b, c),
        Side::B => (c, a),
        Side::C => (a, b),
    };
    geodesic_eval(&p, &q, t)
}
