use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{CycField, CycNum, FieldError};

/// An integer that serializes as a JSON number when it fits in 64 bits and as
/// a decimal string otherwise.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IntText {
    Word(i64),
    Text(String),
}

impl IntText {
    fn from_big(v: &BigInt) -> IntText {
        match v.to_i64() {
            Some(w) => IntText::Word(w),
            None => IntText::Text(v.to_string()),
        }
    }

    fn to_big(&self) -> Result<BigInt, FieldError> {
        match self {
            IntText::Word(w) => Ok(BigInt::from(*w)),
            IntText::Text(t) => t.parse().map_err(|_| FieldError::Malformed(alloc::format!("bad integer {t:?}"))),
        }
    }
}

/// Wire form of a [`CycNum`]: the level and one `(num, den)` pair per power-basis coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycNumData {
    pub level: u32,
    pub coeffs: Vec<(IntText, IntText)>,
}

impl From<&CycNum> for CycNumData {
    fn from(z: &CycNum) -> Self {
        CycNumData {
            level: z.level(),
            coeffs: z.coefficients().iter().map(|(n, d)| (IntText::from_big(n), IntText::from_big(d))).collect(),
        }
    }
}

impl TryFrom<&CycNumData> for CycNum {
    type Error = FieldError;

    fn try_from(data: &CycNumData) -> Result<CycNum, FieldError> {
        let field = CycField::get(data.level)?;
        if data.coeffs.len() != field.degree() {
            return Err(FieldError::Malformed(alloc::format!(
                "expected {} coefficients, found {}",
                field.degree(),
                data.coeffs.len()
            )));
        }
        let mut acc = field.zero();
        for (k, (n, d)) in data.coeffs.iter().enumerate() {
            let (n, d) = (n.to_big()?, d.to_big()?);
            if d == BigInt::from(0) {
                return Err(FieldError::DivisionByZero);
            }
            if n == BigInt::from(0) {
                continue;
            }
            let term = big_ratio(field, &n, &d) * field.zeta(k as i64);
            acc += &term;
        }
        Ok(acc)
    }
}

fn big_ratio(field: &'static CycField, n: &BigInt, d: &BigInt) -> CycNum {
    let mut num: super::Buf<BigInt> = smallvec::SmallVec::from_elem(BigInt::from(0), field.degree());
    num[0] = n.clone();
    let mut den = d.clone();
    super::kernel::normalize(&mut num, &mut den);
    CycNum::from_big(field, num, den)
}

impl Serialize for CycNum {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        CycNumData::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycNum {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<CycNum, D::Error> {
        let data = CycNumData::deserialize(d)?;
        CycNum::try_from(&data).map_err(serde::de::Error::custom)
    }
}
