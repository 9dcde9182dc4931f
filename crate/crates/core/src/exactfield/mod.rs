//! Exact arithmetic in cyclotomic fields `Q(ζ_N)`.
//!
//! Elements are stored in the power basis `1, ζ, …, ζ^{φ(N)-1}` with a common
//! denominator, always reduced modulo the cyclotomic polynomial and brought to
//! lowest terms, so structural equality is field equality. Small values live
//! in machine words; arithmetic that would overflow transparently moves to
//! arbitrary precision.

mod kernel;
mod serial;

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::hash::{Hash, Hasher};
use core::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use once_cell::race::OnceBox;
use smallvec::SmallVec;

use kernel::Buf;

pub use serial::CycNumData;

/// Level used throughout the e6 computations; it contains all roots of unity
/// of order dividing 36.
pub const DEFAULT_LEVEL: u32 = 36;

/// Largest supported level.
pub const MAX_LEVEL: u32 = 360;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot combine elements of levels {0} and {1}")]
    LevelMismatch(u32, u32),
    #[error("level {0} is outside 1..={MAX_LEVEL}")]
    UnsupportedLevel(u32),
    #[error("a root of unity of order {order} does not exist at level {level}")]
    OrderNotDividingLevel { order: u32, level: u32 },
    #[error("malformed element data: {0}")]
    Malformed(String),
}

/// Precomputed data for one cyclotomic field.
pub struct CycField {
    level: u32,
    phi: usize,
    modulus: Vec<i64>,
    reduction: Vec<Vec<i64>>,
    powers: Vec<Vec<i64>>,
    units: Vec<u32>,
}

#[allow(clippy::declare_interior_mutable_const)]
const EMPTY_SLOT: OnceBox<CycField> = OnceBox::new();
static FIELDS: [OnceBox<CycField>; MAX_LEVEL as usize + 1] = [EMPTY_SLOT; MAX_LEVEL as usize + 1];

fn poly_divexact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dl = den.len();
    let mut quo = vec![0i64; num.len() + 1 - dl];
    for k in (0..quo.len()).rev() {
        let c = rem[k + dl - 1];
        quo[k] = c;
        for (j, &d) in den.iter().enumerate() {
            rem[k + j] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    quo
}

/// Integer coefficients of the `n`-th cyclotomic polynomial, lowest degree first.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    let mut p = vec![0i64; n as usize + 1];
    p[0] = -1;
    p[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            p = poly_divexact(&p, &cyclotomic_polynomial(d));
        }
    }
    p
}

impl CycField {
    fn build(level: u32) -> CycField {
        let modulus = cyclotomic_polynomial(level);
        let phi = modulus.len() - 1;
        let n = level as usize;
        let top = (2 * phi).max(n + 1);
        let mut powers: Vec<Vec<i64>> = Vec::with_capacity(top);
        let mut cur = vec![0i64; phi];
        cur[0] = 1;
        for _ in 0..top {
            powers.push(cur.clone());
            let carry = cur[phi - 1];
            for j in (1..phi).rev() {
                cur[j] = cur[j - 1];
            }
            cur[0] = 0;
            if carry != 0 {
                for j in 0..phi {
                    cur[j] -= carry * modulus[j];
                }
            }
        }
        let reduction = (phi..2 * phi - 1).map(|k| powers[k].clone()).collect();
        powers.truncate(n);
        let units = (1..=level).filter(|k| k.gcd(&level) == 1).collect();
        CycField { level, phi, modulus, reduction, powers, units }
    }

    /// Returns the shared field data for `level`.
    pub fn get(level: u32) -> Result<&'static CycField, FieldError> {
        if level == 0 || level > MAX_LEVEL {
            return Err(FieldError::UnsupportedLevel(level));
        }
        Ok(FIELDS[level as usize].get_or_init(|| alloc::boxed::Box::new(CycField::build(level))))
    }

    /// The field `Q(ζ_36)`.
    pub fn standard() -> &'static CycField {
        CycField::get(DEFAULT_LEVEL).expect("default level is supported")
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    /// Degree of the field over `Q`.
    pub fn degree(&self) -> usize {
        self.phi
    }

    pub fn modulus(&self) -> &[i64] {
        &self.modulus
    }

    fn small(&'static self, den: i64, num: SmallVec<[i64; 12]>) -> CycNum {
        CycNum { field: self, repr: Repr::Small { den, num } }
    }

    pub fn zero(&'static self) -> CycNum {
        self.small(1, SmallVec::from_elem(0, self.phi))
    }

    pub fn one(&'static self) -> CycNum {
        self.int(1)
    }

    pub fn int(&'static self, v: i64) -> CycNum {
        let mut num = SmallVec::from_elem(0, self.phi);
        num[0] = v;
        self.small(1, num)
    }

    /// The rational number `n/d`.
    pub fn rational(&'static self, n: i64, d: i64) -> Result<CycNum, FieldError> {
        if d == 0 {
            return Err(FieldError::DivisionByZero);
        }
        let mut num: Buf<i128> = SmallVec::from_elem(0, self.phi);
        num[0] = n as i128;
        let mut den = d as i128;
        kernel::normalize(&mut num, &mut den);
        Ok(CycNum::from_i128(self, num, den))
    }

    /// `ζ_N^k` for any integer `k`.
    pub fn zeta(&'static self, k: i64) -> CycNum {
        let e = k.rem_euclid(self.level as i64) as usize;
        self.small(1, self.powers[e].iter().copied().collect())
    }

    /// The primitive-`m` root of unity `ζ_m^k = ζ_N^{kN/m}`; requires `m | N`.
    pub fn root_of_unity(&'static self, k: i64, m: u32) -> Result<CycNum, FieldError> {
        if m == 0 || !self.level.is_multiple_of(m) {
            return Err(FieldError::OrderNotDividingLevel { order: m, level: self.level });
        }
        Ok(self.zeta(k * (self.level / m) as i64))
    }

    /// Builds an element from rational coefficients `(num, den)` of
    /// `1, ζ, ζ², …`; any number of coefficients is accepted and reduced.
    pub fn from_coefficients(&'static self, coeffs: &[(i64, i64)]) -> Result<CycNum, FieldError> {
        let mut acc = self.zero();
        for (k, &(n, d)) in coeffs.iter().enumerate() {
            if n != 0 {
                acc += &(&self.rational(n, d)? * &self.zeta(k as i64));
            }
        }
        Ok(acc)
    }
}

impl fmt::Debug for CycField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(zeta_{})", self.level)
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Small { den: i64, num: SmallVec<[i64; 12]> },
    Big { den: BigInt, num: Vec<BigInt> },
}

/// An element of `Q(ζ_N)` in canonical form.
#[derive(Clone)]
pub struct CycNum {
    field: &'static CycField,
    repr: Repr,
}

impl PartialEq for CycNum {
    fn eq(&self, other: &Self) -> bool {
        self.field.level == other.field.level && self.repr == other.repr
    }
}

impl Eq for CycNum {}

impl Hash for CycNum {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.level.hash(state);
        self.repr.hash(state);
    }
}

impl CycNum {
    fn from_i128(field: &'static CycField, num: Buf<i128>, den: i128) -> CycNum {
        let small_den = i64::try_from(den);
        let small_num: Option<SmallVec<[i64; 12]>> =
            num.iter().map(|&c| i64::try_from(c).ok()).collect();
        match (small_den, small_num) {
            (Ok(den), Some(num)) => CycNum { field, repr: Repr::Small { den, num } },
            _ => CycNum {
                field,
                repr: Repr::Big {
                    den: BigInt::from(den),
                    num: num.into_iter().map(BigInt::from).collect(),
                },
            },
        }
    }

    fn from_big(field: &'static CycField, num: Buf<BigInt>, den: BigInt) -> CycNum {
        let small_den = den.to_i64();
        let small_num: Option<SmallVec<[i64; 12]>> = num.iter().map(ToPrimitive::to_i64).collect();
        match (small_den, small_num) {
            (Some(den), Some(num)) => CycNum { field, repr: Repr::Small { den, num } },
            _ => CycNum { field, repr: Repr::Big { den, num: num.into_vec() } },
        }
    }

    fn wide(&self) -> Option<(Buf<i128>, i128)> {
        match &self.repr {
            Repr::Small { den, num } => Some((num.iter().map(|&c| c as i128).collect(), *den as i128)),
            Repr::Big { .. } => None,
        }
    }

    fn big(&self) -> (Buf<BigInt>, BigInt) {
        match &self.repr {
            Repr::Small { den, num } => (num.iter().map(|&c| BigInt::from(c)).collect(), BigInt::from(*den)),
            Repr::Big { den, num } => (num.iter().cloned().collect(), den.clone()),
        }
    }

    pub fn field(&self) -> &'static CycField {
        self.field
    }

    pub fn level(&self) -> u32 {
        self.field.level
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Small { num, .. } => num.iter().all(|&c| c == 0),
            Repr::Big { num, .. } => num.iter().all(Zero::is_zero),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.repr {
            Repr::Small { den, num } => *den == 1 && num[0] == 1 && num[1..].iter().all(|&c| c == 0),
            Repr::Big { .. } => false,
        }
    }

    /// True when the element lies in `Q`.
    pub fn is_rational(&self) -> bool {
        match &self.repr {
            Repr::Small { num, .. } => num[1..].iter().all(|&c| c == 0),
            Repr::Big { num, .. } => num[1..].iter().all(Zero::is_zero),
        }
    }

    /// Number of nonzero power-basis coefficients.
    pub fn support_size(&self) -> usize {
        match &self.repr {
            Repr::Small { num, .. } => num.iter().filter(|&&c| c != 0).count(),
            Repr::Big { num, .. } => num.iter().filter(|c| !c.is_zero()).count(),
        }
    }

    /// Rough size of the element, used to prefer cheap pivots.
    pub fn weight(&self) -> u64 {
        match &self.repr {
            Repr::Small { den, num } => {
                let mut w = (64 - den.unsigned_abs().leading_zeros()) as u64;
                for c in num {
                    if *c != 0 {
                        w += 1 + (64 - c.unsigned_abs().leading_zeros()) as u64;
                    }
                }
                w
            }
            Repr::Big { den, num } => {
                den.bits() + num.iter().filter(|c| !c.is_zero()).map(|c| 1 + c.bits()).sum::<u64>()
            }
        }
    }

    /// Coefficients as reduced fractions `(num, den)` in the power basis.
    pub fn coefficients(&self) -> Vec<(BigInt, BigInt)> {
        let (num, den) = self.big();
        num.into_iter()
            .map(|c| {
                let g = c.gcd(&den);
                if g.is_zero() {
                    (BigInt::zero(), BigInt::one())
                } else {
                    (&c / &g, &den / &g)
                }
            })
            .collect()
    }

    /// The value as a rational `(num, den)` when the element is rational.
    pub fn to_rational(&self) -> Option<(BigInt, BigInt)> {
        if !self.is_rational() {
            return None;
        }
        self.coefficients().into_iter().next()
    }

    fn check(&self, other: &CycNum) -> Result<(), FieldError> {
        if self.field.level != other.field.level {
            Err(FieldError::LevelMismatch(self.field.level, other.field.level))
        } else {
            Ok(())
        }
    }

    pub fn checked_add(&self, other: &CycNum) -> Result<CycNum, FieldError> {
        self.check(other)?;
        if let (Some((a, da)), Some((b, db))) = (self.wide(), other.wide()) {
            if let Some((n, d)) = kernel::add(&a, &da, &b, &db) {
                return Ok(CycNum::from_i128(self.field, n, d));
            }
        }
        let ((a, da), (b, db)) = (self.big(), other.big());
        let (n, d) = kernel::add(&a, &da, &b, &db).expect("bigint arithmetic cannot overflow");
        Ok(CycNum::from_big(self.field, n, d))
    }

    pub fn checked_sub(&self, other: &CycNum) -> Result<CycNum, FieldError> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &CycNum) -> Result<CycNum, FieldError> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(self.field.zero());
        }
        if let (Some((a, da)), Some((b, db))) = (self.wide(), other.wide()) {
            if let Some((n, d)) = kernel::mul(&a, &da, &b, &db, self.field) {
                return Ok(CycNum::from_i128(self.field, n, d));
            }
        }
        let ((a, da), (b, db)) = (self.big(), other.big());
        let (n, d) = kernel::mul(&a, &da, &b, &db, self.field).expect("bigint arithmetic cannot overflow");
        Ok(CycNum::from_big(self.field, n, d))
    }

    fn galois_image(&self, k: u32) -> CycNum {
        if let Some((a, da)) = self.wide() {
            if let Some(mut n) = kernel::galois(&a, k, self.field) {
                let mut d = da;
                kernel::normalize(&mut n, &mut d);
                return CycNum::from_i128(self.field, n, d);
            }
        }
        let (a, da) = self.big();
        let mut n = kernel::galois(&a, k, self.field).expect("bigint arithmetic cannot overflow");
        let mut d = da;
        kernel::normalize(&mut n, &mut d);
        CycNum::from_big(self.field, n, d)
    }

    /// Image under the Galois automorphism `ζ -> ζ^k`; `k` must be prime to the level.
    pub fn galois(&self, k: i64) -> Result<CycNum, FieldError> {
        let n = self.field.level as i64;
        let k = k.rem_euclid(n) as u32;
        if (k as i64).gcd(&n) != 1 && n != 1 {
            return Err(FieldError::Malformed(alloc::format!("{k} is not a unit modulo {n}")));
        }
        Ok(self.galois_image(k.max(1)))
    }

    /// Complex conjugate, `ζ -> ζ^{-1}`.
    pub fn conj(&self) -> CycNum {
        self.galois_image((self.field.level - 1).max(1))
    }

    /// Field norm down to `Q`.
    pub fn norm(&self) -> CycNum {
        let mut acc = self.field.one();
        for &k in &self.field.units {
            acc = &acc * &self.galois_image(k);
        }
        acc
    }

    fn rational_inverse(&self) -> CycNum {
        let (num, den) = self.big();
        let mut n: Buf<BigInt> = SmallVec::from_elem(BigInt::zero(), self.field.phi);
        n[0] = den;
        let mut d = num[0].clone();
        kernel::normalize(&mut n, &mut d);
        CycNum::from_big(self.field, n, d)
    }

    pub fn inv(&self) -> Result<CycNum, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        if self.is_rational() {
            return Ok(self.rational_inverse());
        }
        let mut others = self.field.one();
        for &k in &self.field.units {
            if k != 1 {
                others = &others * &self.galois_image(k);
            }
        }
        let norm = self * &others;
        debug_assert!(norm.is_rational());
        Ok(&others * &norm.rational_inverse())
    }

    pub fn checked_div(&self, other: &CycNum) -> Result<CycNum, FieldError> {
        self.check(other)?;
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, mut e: u64) -> CycNum {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Integer power; negative exponents require a nonzero base.
    pub fn powi(&self, e: i64) -> Result<CycNum, FieldError> {
        if e >= 0 {
            Ok(self.pow(e as u64))
        } else {
            Ok(self.inv()?.pow(e.unsigned_abs()))
        }
    }

    /// Least `n >= 1` with `self^n = 1`, if the element is a root of unity.
    pub fn multiplicative_order(&self) -> Option<u32> {
        let level = self.field.level;
        let bound = level.lcm(&2);
        if self.is_zero() || !self.pow(bound as u64).is_one() {
            return None;
        }
        (1..=bound).filter(|d| bound.is_multiple_of(*d)).find(|&d| self.pow(d as u64).is_one())
    }

    /// The exponent `k` in `0..N` with `self = ζ_N^k`, if there is one.
    pub fn zeta_exponent(&self) -> Option<u32> {
        if let Repr::Small { den: 1, num } = &self.repr {
            return self.field.powers.iter().position(|p| p.as_slice() == num.as_slice()).map(|k| k as u32);
        }
        None
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, (n, d)) in self.coefficients().into_iter().enumerate() {
            if n.is_zero() {
                continue;
            }
            let neg = n.is_negative();
            let mag = n.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let unit = mag.is_one() && d.is_one();
            if k == 0 || !unit {
                write!(f, "{mag}")?;
                if !d.is_one() {
                    write!(f, "/{d}")?;
                }
            }
            if k > 0 {
                if !unit {
                    f.write_str("*")?;
                }
                if k == 1 {
                    write!(f, "z{}", self.field.level)?;
                } else {
                    write!(f, "z{}^{k}", self.field.level)?;
                }
            }
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident, $assign_tr:ident, $assign:ident) => {
        impl<'a> $tr<&'a CycNum> for &'a CycNum {
            type Output = CycNum;
            fn $method(self, rhs: &'a CycNum) -> CycNum {
                match self.$checked(rhs) {
                    Ok(v) => v,
                    Err(e) => panic!("{}", e),
                }
            }
        }
        impl $tr<CycNum> for CycNum {
            type Output = CycNum;
            fn $method(self, rhs: CycNum) -> CycNum {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $assign_tr<&'a CycNum> for CycNum {
            fn $assign(&mut self, rhs: &'a CycNum) {
                *self = (&*self).$method(rhs);
            }
        }
    };
}

forward_binop!(Add, add, checked_add, AddAssign, add_assign);
forward_binop!(Sub, sub, checked_sub, SubAssign, sub_assign);
forward_binop!(Mul, mul, checked_mul, MulAssign, mul_assign);

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        let repr = match &self.repr {
            Repr::Small { den, num } if num.iter().all(|&c| c != i64::MIN) => {
                Repr::Small { den: *den, num: num.iter().map(|&c| -c).collect() }
            }
            _ => {
                let (num, den) = self.big();
                return CycNum::from_big(self.field, num.into_iter().map(|c| -c).collect(), den);
            }
        };
        CycNum { field: self.field, repr }
    }
}

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -&self
    }
}

/// Shorthand for elements of the standard field `Q(ζ_36)`.
pub mod std36 {
    use super::{CycField, CycNum};

    pub fn int(v: i64) -> CycNum {
        CycField::standard().int(v)
    }

    pub fn zero() -> CycNum {
        CycField::standard().zero()
    }

    pub fn one() -> CycNum {
        CycField::standard().one()
    }

    pub fn rational(n: i64, d: i64) -> CycNum {
        CycField::standard().rational(n, d).expect("nonzero denominator")
    }

    /// `ζ_36^k`.
    pub fn zeta(k: i64) -> CycNum {
        CycField::standard().zeta(k)
    }

    /// `ζ_m^k`, for `m` dividing 36.
    pub fn root(k: i64, m: u32) -> CycNum {
        CycField::standard().root_of_unity(k, m).expect("order divides 36")
    }
}

#[cfg(test)]
mod tests {
    use super::std36::*;
    use super::*;

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(36), vec![1, 0, 0, 0, 0, 0, -1, 0, 0, 0, 0, 0, 1]);
        assert_eq!(CycField::standard().degree(), 12);
    }

    #[test]
    fn cube_roots_sum() {
        let w = root(1, 3);
        assert_eq!(&w + &w.pow(2), int(-1));
        assert_eq!(root(1, 4).pow(2), int(-1));
        let prod = &(&one() - &w) * &(&one() - &w.pow(2));
        assert_eq!(prod, int(3));
    }

    #[test]
    fn ninth_root_relation() {
        let xi = root(1, 9);
        let w = root(1, 3);
        assert_eq!(xi.multiplicative_order(), Some(9));
        let k = (1..9).find(|&k| xi.pow(3) == w.pow(k)).unwrap();
        assert_eq!(k, 1);
        assert_eq!(xi.pow(6), w.pow(2));
    }

    #[test]
    fn errors() {
        let f5 = CycField::get(5).unwrap();
        assert!(matches!(int(1).checked_add(&f5.one()), Err(FieldError::LevelMismatch(36, 5))));
        assert_eq!(zero().inv(), Err(FieldError::DivisionByZero));
        assert!(CycField::standard().root_of_unity(1, 5).is_err());
        assert!(CycField::get(0).is_err());
    }

    #[test]
    fn inverse_and_order() {
        let a = &(&int(2) + &zeta(1)) - &rational(1, 3);
        let b = a.inv().unwrap();
        assert!((&a * &b).is_one());
        assert_eq!(int(-1).multiplicative_order(), Some(2));
        assert_eq!(int(2).multiplicative_order(), None);
        assert_eq!(zeta(5).multiplicative_order(), Some(36));
        assert_eq!(zeta(7).zeta_exponent(), Some(7));
        assert_eq!(a.conj().conj(), a);
    }

    #[test]
    fn overflow_promotes() {
        let big = int(i64::MAX);
        let sq = &big * &big;
        let back = sq.checked_div(&big).unwrap();
        assert_eq!(back, big);
    }

    #[test]
    fn display() {
        assert_eq!(alloc::format!("{}", &int(1) - &zeta(3)), "1 - z36^3");
        assert_eq!(alloc::format!("{}", rational(-2, 4)), "-1/2");
    }
}
