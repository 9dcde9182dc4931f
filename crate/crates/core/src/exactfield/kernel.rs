use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, Signed, Zero};
use smallvec::{smallvec, SmallVec};

use super::CycField;

pub(crate) type Buf<T> = SmallVec<[T; 24]>;

/// Integer type usable by the coefficient kernels. Checked operations return
/// `None` on overflow; for `BigInt` they never do.
pub(crate) trait Int: Clone + Integer + Signed + CheckedAdd + CheckedSub + CheckedMul {
    fn from_i64(v: i64) -> Self;
}

impl Int for i128 {
    fn from_i64(v: i64) -> Self {
        v as i128
    }
}

impl Int for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
}

fn add_into<T: Int>(acc: &mut T, v: &T) -> Option<()> {
    *acc = acc.checked_add(v)?;
    Some(())
}

/// Product of two reduced coefficient vectors, reduced modulo the cyclotomic polynomial.
pub(crate) fn poly_mul<T: Int>(a: &[T], b: &[T], field: &CycField) -> Option<Buf<T>> {
    let phi = field.phi;
    let mut prod: Buf<T> = smallvec![T::zero(); 2 * phi - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            add_into(&mut prod[i + j], &x.checked_mul(y)?)?;
        }
    }
    for k in phi..2 * phi - 1 {
        if prod[k].is_zero() {
            continue;
        }
        let c = core::mem::replace(&mut prod[k], T::zero());
        for (j, &r) in field.reduction[k - phi].iter().enumerate() {
            if r != 0 {
                add_into(&mut prod[j], &c.checked_mul(&T::from_i64(r))?)?;
            }
        }
    }
    prod.truncate(phi);
    Some(prod)
}

/// Brings `num/den` to lowest terms with a positive denominator.
pub(crate) fn normalize<T: Int>(num: &mut [T], den: &mut T) {
    if num.iter().all(Zero::is_zero) {
        *den = T::one();
        return;
    }
    let mut g = den.abs();
    for c in num.iter() {
        if g.is_one() {
            break;
        }
        if !c.is_zero() {
            g = g.gcd(c);
        }
    }
    if den.is_negative() {
        g = -g;
    }
    if !g.is_one() {
        for c in num.iter_mut() {
            *c = c.div_floor(&g);
        }
        *den = den.div_floor(&g);
    }
}

pub(crate) fn add<T: Int>(a: &[T], da: &T, b: &[T], db: &T) -> Option<(Buf<T>, T)> {
    if da == db {
        let mut out: Buf<T> = SmallVec::with_capacity(a.len());
        for (x, y) in a.iter().zip(b) {
            out.push(x.checked_add(y)?);
        }
        let mut den = da.clone();
        normalize(&mut out, &mut den);
        return Some((out, den));
    }
    let g = da.gcd(db);
    let fa = db.div_floor(&g);
    let fb = da.div_floor(&g);
    let mut out: Buf<T> = SmallVec::with_capacity(a.len());
    for (x, y) in a.iter().zip(b) {
        out.push(x.checked_mul(&fa)?.checked_add(&y.checked_mul(&fb)?)?);
    }
    let mut den = da.checked_mul(&fa)?;
    normalize(&mut out, &mut den);
    Some((out, den))
}

pub(crate) fn mul<T: Int>(a: &[T], da: &T, b: &[T], db: &T, field: &CycField) -> Option<(Buf<T>, T)> {
    let mut out = poly_mul(a, b, field)?;
    let mut den = da.checked_mul(db)?;
    normalize(&mut out, &mut den);
    Some((out, den))
}

/// Image of `a` under the Galois automorphism `ζ -> ζ^k`.
pub(crate) fn galois<T: Int>(a: &[T], k: u32, field: &CycField) -> Option<Buf<T>> {
    let n = field.level as usize;
    let mut out: Buf<T> = smallvec![T::zero(); field.phi];
    for (j, c) in a.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let e = (j * k as usize) % n;
        for (slot, &p) in out.iter_mut().zip(&field.powers[e]) {
            if p != 0 {
                add_into(slot, &c.checked_mul(&T::from_i64(p))?)?;
            }
        }
    }
    Some(out)
}
