//! Integer homogeneous coordinates and 3×3 projective transforms.
//!
//! A pair `(k, l)` is carried as the point `(k : l : 1)` scaled to coprime
//! integers. The van der Corput processes act linearly on these points, so a
//! whole word of operators compiles to a single integer matrix.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

fn gcd_all<'a>(xs: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    xs.into_iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProjPoint {
    x: BigInt,
    y: BigInt,
    z: BigInt,
}

impl ProjPoint {
    /// Builds a reduced point. Fails on `(0:0:0)`.
    pub fn new(x: impl Into<BigInt>, y: impl Into<BigInt>, z: impl Into<BigInt>) -> Result<Self> {
        Self::reduce(ProjPoint { x: x.into(), y: y.into(), z: z.into() })
    }

    /// Divides out the common gcd and normalises the sign so that `z > 0`
    /// (or the first nonzero coordinate is positive when `z = 0`).
    pub fn reduce(p: ProjPoint) -> Result<Self> {
        let g = gcd_all([&p.x, &p.y, &p.z]);
        if g.is_zero() {
            return Err(Error::InvalidPoint);
        }
        let lead = [&p.z, &p.x, &p.y].into_iter().find(|c| !c.is_zero()).unwrap();
        let g = if lead.is_negative() { -g } else { g };
        Ok(ProjPoint { x: p.x / &g, y: p.y / &g, z: p.z / &g })
    }

    pub fn coords(&self) -> [&BigInt; 3] {
        [&self.x, &self.y, &self.z]
    }

    pub fn x(&self) -> &BigInt {
        &self.x
    }
    pub fn y(&self) -> &BigInt {
        &self.y
    }
    pub fn z(&self) -> &BigInt {
        &self.z
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}:{}:{})", self.x, self.y, self.z)
    }
}

/// `(k, l) ↦ (k : l : 1)`, scaled to coprime integers with positive `z`.
pub fn mu(k: &BigRational, l: &BigRational) -> ProjPoint {
    let den = k.denom().lcm(l.denom());
    let x = k.numer() * (&den / k.denom());
    let y = l.numer() * (&den / l.denom());
    ProjPoint::reduce(ProjPoint { x, y, z: den }).expect("z is positive")
}

/// `(k : l : m) ↦ (k/m, l/m)`.
pub fn mu_inv(p: &ProjPoint) -> Result<(BigRational, BigRational)> {
    if p.z.is_zero() {
        return Err(Error::PointAtInfinity);
    }
    Ok((
        BigRational::new(p.x.clone(), p.z.clone()),
        BigRational::new(p.y.clone(), p.z.clone()),
    ))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProjMatrix {
    m: [[BigInt; 3]; 3],
}

impl ProjMatrix {
    pub fn from_i64(rows: [[i64; 3]; 3]) -> Self {
        ProjMatrix { m: rows.map(|r| r.map(BigInt::from)) }
    }

    /// Wraps raw entries without reducing them.
    pub fn from_entries(m: [[BigInt; 3]; 3]) -> Self {
        ProjMatrix { m }
    }

    pub fn identity() -> Self {
        Self::from_i64([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    }

    /// `(k:l:m) ↦ (k : k+l+m : 2k+2m)`
    pub fn a() -> Self {
        Self::from_i64([[1, 0, 0], [1, 1, 1], [2, 0, 2]])
    }

    /// `(k:l:m) ↦ (l : 2k+m : 2k+2m)`
    pub fn ba() -> Self {
        Self::from_i64([[0, 1, 0], [2, 0, 1], [2, 0, 2]])
    }

    /// `(k:l:m) ↦ (2l−m : 2k+m : 2m)`, i.e. `(k,l) ↦ (l−1/2, k+1/2)`.
    pub fn b() -> Self {
        Self::from_i64([[0, 2, -1], [2, 0, 1], [0, 0, 2]])
    }

    pub fn entries(&self) -> &[[BigInt; 3]; 3] {
        &self.m
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        &self.m[i][j]
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        ProjMatrix { m: self.m.clone().map(|r| r.map(|e| e * s)) }
    }

    /// Divides all nine entries by their gcd (sign is kept).
    pub fn reduce(&self) -> Result<Self> {
        let g = gcd_all(self.m.iter().flatten());
        if g.is_zero() {
            return Err(Error::InvalidMatrix);
        }
        if g.is_one() {
            return Ok(self.clone());
        }
        Ok(ProjMatrix { m: self.m.clone().map(|r| r.map(|e| e / &g)) })
    }

    pub fn is_reduced(&self) -> bool {
        gcd_all(self.m.iter().flatten()).is_one()
    }

    fn product(&self, rhs: &ProjMatrix) -> [[BigInt; 3]; 3] {
        std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                (0..3).fold(BigInt::zero(), |acc, t| acc + &self.m[i][t] * &rhs.m[t][j])
            })
        })
    }

    /// Reduced product `self · rhs`.
    pub fn mul(&self, rhs: &ProjMatrix) -> Self {
        ProjMatrix { m: self.product(rhs) }
            .reduce()
            .expect("product of nonsingular matrices is nonzero")
    }

    pub fn pow(&self, mut n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            n >>= 1;
        }
        acc
    }

    pub fn determinant(&self) -> BigInt {
        let m = &self.m;
        &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1])
            - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
            + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
    }

    /// Unreduced image `M·p` as raw coordinates.
    pub fn apply_raw(&self, p: &ProjPoint) -> [BigInt; 3] {
        let v = p.coords();
        std::array::from_fn(|i| {
            (0..3).fold(BigInt::zero(), |acc, t| acc + &self.m[i][t] * v[t])
        })
    }

    pub fn apply(&self, p: &ProjPoint) -> Result<ProjPoint> {
        let [x, y, z] = self.apply_raw(p);
        ProjPoint::reduce(ProjPoint { x, y, z }).map_err(|_| Error::DegenerateImage)
    }

    /// Applies the transform to an affine point `(k, l)`.
    pub fn apply_affine(&self, k: &BigRational, l: &BigRational) -> Result<(BigRational, BigRational)> {
        mu_inv(&self.apply(&mu(k, l))?)
    }
}

impl fmt::Display for ProjMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .m
            .iter()
            .map(|r| format!("{} {} {}", r[0], r[1], r[2]))
            .collect();
        write!(f, "[{}]", rows.join("; "))
    }
}
