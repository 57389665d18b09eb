use std::fmt;

use super::scalar::{is_square_free, QuadScalar};
use crate::error::{Error, Result};

/// Default relative orthogonality tolerance for numeric rays.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Numeric rays closer than this in `1 - |cos θ|` are the same ray.
pub const DUPLICATE_COS_TOLERANCE: f64 = 1e-9;

/// How ray coordinates are represented for a whole ray set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ScalarMode {
    /// Coordinates in ℤ[√m]; `m = 1` means plain integers.
    Exact { discriminant: u32 },
    /// Floating coordinates with a relative orthogonality tolerance.
    Numeric { tolerance: f64 },
}

impl ScalarMode {
    pub fn integer() -> Self {
        ScalarMode::Exact { discriminant: 1 }
    }

    pub fn quadratic(m: i64) -> Result<Self> {
        if !is_square_free(m) || m > u32::MAX as i64 {
            return Err(Error::BadDiscriminant(m));
        }
        Ok(ScalarMode::Exact {
            discriminant: m as u32,
        })
    }

    pub fn numeric(tolerance: f64) -> Result<Self> {
        if !(tolerance >= 0.0 && tolerance.is_finite()) {
            return Err(Error::InvalidInstance(format!(
                "tolerance {tolerance} must be a finite nonnegative number"
            )));
        }
        Ok(ScalarMode::Numeric { tolerance })
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, ScalarMode::Exact { .. })
    }
}

/// A value produced by an inner product.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Scalar {
    Exact(QuadScalar),
    Numeric(f64),
}

impl Scalar {
    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Exact(q) => q.to_f64(),
            Scalar::Numeric(x) => *x,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Coords {
    Exact(Vec<QuadScalar>),
    Numeric(Vec<f64>),
}

/// A real vector standing for the ray (rank-one projector) it spans.
#[derive(Debug, Clone, PartialEq)]
pub struct Ray {
    coords: Coords,
}

impl Ray {
    pub fn exact(coords: Vec<QuadScalar>) -> Result<Self> {
        if let Some(first) = coords.first() {
            for c in &coords[1..] {
                if c.discriminant() != first.discriminant() {
                    return Err(Error::DiscriminantMismatch {
                        left: first.discriminant(),
                        right: c.discriminant(),
                    });
                }
            }
        }
        Ok(Ray {
            coords: Coords::Exact(coords),
        })
    }

    /// Integer coordinates in ℤ.
    pub fn integer(coords: &[i64]) -> Self {
        Ray {
            coords: Coords::Exact(
                coords
                    .iter()
                    .map(|&a| QuadScalar::integer(a, 1).expect("1 is square-free"))
                    .collect(),
            ),
        }
    }

    pub fn numeric(coords: Vec<f64>) -> Self {
        Ray {
            coords: Coords::Numeric(coords),
        }
    }

    pub fn dimension(&self) -> usize {
        match &self.coords {
            Coords::Exact(c) => c.len(),
            Coords::Numeric(c) => c.len(),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.coords, Coords::Exact(_))
    }

    pub fn exact_coords(&self) -> Option<&[QuadScalar]> {
        match &self.coords {
            Coords::Exact(c) => Some(c),
            Coords::Numeric(_) => None,
        }
    }

    /// The discriminant shared by the coordinates, if exact.
    pub fn discriminant(&self) -> Option<u32> {
        self.exact_coords()
            .and_then(|c| c.first())
            .map(|q| q.discriminant())
    }

    pub fn to_f64(&self) -> Vec<f64> {
        match &self.coords {
            Coords::Exact(c) => c.iter().map(QuadScalar::to_f64).collect(),
            Coords::Numeric(c) => c.clone(),
        }
    }

    /// Converts an exact ray to a numeric one.
    pub fn to_numeric(&self) -> Ray {
        Ray::numeric(self.to_f64())
    }

    pub fn is_zero(&self) -> bool {
        match &self.coords {
            Coords::Exact(c) => c.iter().all(QuadScalar::is_zero),
            Coords::Numeric(c) => c.iter().all(|&x| x == 0.0),
        }
    }

    pub fn norm_f64(&self) -> f64 {
        self.to_f64().iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    /// Multiplies every coordinate by an integer.
    pub fn scaled(&self, k: i64) -> Result<Ray> {
        Ok(match &self.coords {
            Coords::Exact(c) => Ray {
                coords: Coords::Exact(c.iter().map(|q| q.scale(k)).collect::<Result<_>>()?),
            },
            Coords::Numeric(c) => Ray::numeric(c.iter().map(|x| x * k as f64).collect()),
        })
    }
}

fn check_pair(u: &Ray, v: &Ray) -> Result<()> {
    if u.dimension() != v.dimension() {
        return Err(Error::DimensionMismatch {
            expected: u.dimension(),
            found: v.dimension(),
        });
    }
    if u.is_exact() != v.is_exact() {
        return Err(Error::ModeMismatch);
    }
    Ok(())
}

/// `Σ_k u_k·v_k`, exact for exact rays.
pub fn inner_product(u: &Ray, v: &Ray) -> Result<Scalar> {
    check_pair(u, v)?;
    match (&u.coords, &v.coords) {
        (Coords::Exact(a), Coords::Exact(b)) => {
            let disc = a.first().map_or(1, |q| q.discriminant());
            let mut acc = QuadScalar::zero(disc)?;
            for (x, y) in a.iter().zip(b) {
                acc = acc.add(&x.mul(y)?)?;
            }
            Ok(Scalar::Exact(acc))
        }
        (Coords::Numeric(a), Coords::Numeric(b)) => {
            Ok(Scalar::Numeric(a.iter().zip(b).map(|(x, y)| x * y).sum()))
        }
        _ => Err(Error::ModeMismatch),
    }
}

/// Exact rays: the inner product vanishes. Numeric rays:
/// `|⟨u,v⟩| ≤ tol·‖u‖·‖v‖`.
pub fn is_orthogonal(u: &Ray, v: &Ray, tol: f64) -> Result<bool> {
    match inner_product(u, v)? {
        Scalar::Exact(q) => Ok(q.is_zero()),
        Scalar::Numeric(x) => Ok(x.abs() <= tol * u.norm_f64() * v.norm_f64()),
    }
}

/// Whether two rays span the same line. Exact rays compare all 2×2
/// minors, so irrational multiples are caught as well as rational ones.
pub fn is_colinear(u: &Ray, v: &Ray) -> Result<bool> {
    check_pair(u, v)?;
    match (&u.coords, &v.coords) {
        (Coords::Exact(a), Coords::Exact(b)) => {
            for i in 0..a.len() {
                for j in i + 1..a.len() {
                    if !a[i].mul(&b[j])?.sub(&a[j].mul(&b[i])?)?.is_zero() {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        }
        (Coords::Numeric(a), Coords::Numeric(b)) => {
            let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
            let cos = dot / (u.norm_f64() * v.norm_f64());
            Ok(cos.abs() > 1.0 - DUPLICATE_COS_TOLERANCE)
        }
        _ => Err(Error::ModeMismatch),
    }
}

fn gcd(mut a: i64, mut b: i64) -> i64 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Normal form of a ray.
///
/// Exact rays are divided by the gcd of every rational and irrational part
/// and the sign is fixed so that the first nonzero coordinate is positive in
/// the lexicographic `(rat, irr)` order. Numeric rays only get their sign
/// fixed (and `-0.0` cleared) so the normal form is a bitwise fixed point.
pub fn canonicalize(v: &Ray) -> Result<Ray> {
    if v.is_zero() {
        return Err(Error::ZeroRay { index: 0 });
    }
    match &v.coords {
        Coords::Exact(c) => {
            let g = c.iter().fold(0, |g, q| gcd(gcd(g, q.rat()), q.irr()));
            let lead = c.iter().find(|q| !q.is_zero()).expect("nonzero ray");
            let k = if lead.lex_sign() < 0 { -g } else { g };
            Ok(Ray {
                coords: Coords::Exact(c.iter().map(|q| q.div_exact(k)).collect()),
            })
        }
        Coords::Numeric(c) => {
            let lead = c.iter().find(|&&x| x != 0.0).expect("nonzero ray");
            let s = if *lead < 0.0 { -1.0 } else { 1.0 };
            Ok(Ray::numeric(
                c.iter().map(|&x| if x == 0.0 { 0.0 } else { s * x }).collect(),
            ))
        }
    }
}

impl fmt::Display for Ray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = match &self.coords {
            Coords::Exact(c) => c.iter().map(|q| q.to_string()).collect(),
            Coords::Numeric(c) => c.iter().map(|x| x.to_string()).collect(),
        };
        write!(f, "{}", parts.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q2(a: i64, b: i64) -> QuadScalar {
        QuadScalar::new(a, b, 2).unwrap()
    }

    #[test]
    fn inner_products() {
        let e1 = Ray::integer(&[1, 0, 0]);
        let e2 = Ray::integer(&[0, 1, 0]);
        assert_eq!(inner_product(&e1, &e2).unwrap().to_f64(), 0.0);

        let u = Ray::exact(vec![q2(0, 1), q2(1, 0), q2(1, 0)]).unwrap();
        let v = Ray::exact(vec![q2(0, 0), q2(1, 0), q2(-1, 0)]).unwrap();
        assert_eq!(inner_product(&u, &v).unwrap(), Scalar::Exact(q2(0, 0)));

        let a = Ray::integer(&[1, 1, 0]);
        let b = Ray::integer(&[1, 1, 1]);
        assert_eq!(inner_product(&a, &b).unwrap().to_f64(), 2.0);
    }

    #[test]
    fn inner_product_errors() {
        let a = Ray::integer(&[1, 0, 0]);
        assert!(matches!(
            inner_product(&a, &Ray::integer(&[1, 0])),
            Err(Error::DimensionMismatch { .. })
        ));
        assert_eq!(
            inner_product(&a, &Ray::numeric(vec![1.0, 0.0, 0.0])),
            Err(Error::ModeMismatch)
        );
    }

    #[test]
    fn orthogonality() {
        let tol = DEFAULT_TOLERANCE;
        assert!(is_orthogonal(&Ray::integer(&[1, 0, 0]), &Ray::integer(&[0, 0, 1]), tol).unwrap());
        assert!(!is_orthogonal(&Ray::integer(&[1, 0, 0]), &Ray::integer(&[1, 1, 0]), tol).unwrap());
        let u = Ray::numeric(vec![1.0, 0.0, 1e-12]);
        let v = Ray::numeric(vec![0.0, 1.0, 0.0]);
        assert!(is_orthogonal(&u, &v, 1e-9).unwrap());
        let w = Ray::numeric(vec![1e-6, 1.0, 0.0]);
        assert!(!is_orthogonal(&u, &w, 1e-9).unwrap());
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(
            canonicalize(&Ray::integer(&[-2, 0, 2])).unwrap(),
            Ray::integer(&[1, 0, -1])
        );
        let v = Ray::exact(vec![q2(0, 0), q2(0, 2), q2(2, 0)]).unwrap();
        let want = Ray::exact(vec![q2(0, 0), q2(0, 1), q2(1, 0)]).unwrap();
        assert_eq!(canonicalize(&v).unwrap(), want);
        let e1 = Ray::integer(&[1, 0, 0]);
        assert_eq!(canonicalize(&e1).unwrap(), e1);
        assert_eq!(
            canonicalize(&Ray::integer(&[0, 0, 0])),
            Err(Error::ZeroRay { index: 0 })
        );
    }

    #[test]
    fn lexicographic_sign_uses_rational_part_first() {
        // 1 - 2√2 is negative as a real but positive lexicographically
        let v = Ray::exact(vec![q2(1, -2), q2(3, 0), q2(0, 0)]).unwrap();
        assert_eq!(canonicalize(&v).unwrap(), v);
        let w = Ray::exact(vec![q2(0, -1), q2(3, 0), q2(0, 0)]).unwrap();
        let want = Ray::exact(vec![q2(0, 1), q2(-3, 0), q2(0, 0)]).unwrap();
        assert_eq!(canonicalize(&w).unwrap(), want);
    }

    #[test]
    fn numeric_canonical_form_clears_negative_zero() {
        let v = Ray::numeric(vec![-0.0, -1.5, 2.0]);
        assert_eq!(canonicalize(&v).unwrap().to_string(), "0 1.5 -2");
    }

    #[test]
    fn colinearity_catches_irrational_multiples() {
        let u = Ray::exact(vec![q2(1, 0), q2(0, 1), q2(0, 0)]).unwrap();
        let v = Ray::exact(vec![q2(0, 1), q2(2, 0), q2(0, 0)]).unwrap();
        assert!(is_colinear(&u, &v).unwrap());
        let w = Ray::exact(vec![q2(0, 1), q2(1, 0), q2(0, 0)]).unwrap();
        assert!(!is_colinear(&u, &w).unwrap());
    }

    fn exact_ray() -> impl Strategy<Value = Ray> {
        prop::collection::vec((-20i64..20, -20i64..20), 3)
            .prop_filter("nonzero", |c| c.iter().any(|&(a, b)| a != 0 || b != 0))
            .prop_map(|c| Ray::exact(c.into_iter().map(|(a, b)| q2(a, b)).collect()).unwrap())
    }

    proptest! {
        #[test]
        fn canonicalize_is_idempotent_and_scale_invariant(v in exact_ray(), k in (-50i64..50).prop_filter("nonzero", |k| *k != 0)) {
            let c = canonicalize(&v).unwrap();
            prop_assert_eq!(canonicalize(&c).unwrap(), c.clone());
            prop_assert_eq!(canonicalize(&v.scaled(k).unwrap()).unwrap(), c);
        }

        #[test]
        fn exact_and_numeric_orthogonality_agree(u in exact_ray(), v in exact_ray()) {
            let exact = is_orthogonal(&u, &v, DEFAULT_TOLERANCE).unwrap();
            let numeric = is_orthogonal(&u.to_numeric(), &v.to_numeric(), DEFAULT_TOLERANCE).unwrap();
            prop_assert_eq!(exact, numeric);
        }
    }
}
