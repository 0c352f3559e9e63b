//! Exact scalars over ZZ, QQ and prime fields GF(p).

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

const MAX_CHARACTERISTIC: u64 = 1 << 31;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RingKind {
    Integers,
    Rationals,
    PrimeField,
}

/// A coefficient ring. Two handles are equal iff kind and characteristic are.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Ring {
    kind: RingKind,
    characteristic: u32,
}

impl Ring {
    pub const fn integers() -> Ring {
        Ring {
            kind: RingKind::Integers,
            characteristic: 0,
        }
    }

    pub const fn rationals() -> Ring {
        Ring {
            kind: RingKind::Rationals,
            characteristic: 0,
        }
    }

    pub fn prime_field(p: u64) -> Result<Ring> {
        if p > MAX_CHARACTERISTIC || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Ring {
            kind: RingKind::PrimeField,
            characteristic: p as u32,
        })
    }

    pub fn kind(&self) -> RingKind {
        self.kind
    }

    pub fn characteristic(&self) -> u32 {
        self.characteristic
    }

    pub fn is_field(&self) -> bool {
        self.kind != RingKind::Integers
    }

    pub fn zero(&self) -> Scalar {
        Scalar::zero(*self)
    }

    pub fn one(&self) -> Scalar {
        Scalar::one(*self)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        Scalar::from_bigint(*self, BigInt::from(n))
    }

    /// Every element of a finite ring, in increasing residue order.
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        match self.kind {
            RingKind::PrimeField => Some(
                (0..self.characteristic)
                    .map(|r| Scalar {
                        ring: *self,
                        value: Value::Mod(r),
                    })
                    .collect(),
            ),
            _ => None,
        }
    }
}

/// Parses `ZZ`, `QQ` or `GF(p)`.
pub fn make_ring(spec: &str) -> Result<Ring> {
    let s = spec.trim();
    match s {
        "ZZ" => return Ok(Ring::integers()),
        "QQ" => return Ok(Ring::rationals()),
        _ => {}
    }
    let inner = s
        .strip_prefix("GF(")
        .and_then(|rest| rest.strip_suffix(')'))
        .map(str::trim)
        .ok_or_else(|| Error::MalformedRingSpec(spec.to_string()))?;
    if inner.is_empty() || !inner.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::MalformedRingSpec(spec.to_string()));
    }
    let p: u64 = inner
        .parse()
        .map_err(|_| Error::MalformedRingSpec(spec.to_string()))?;
    Ring::prime_field(p)
}

impl FromStr for Ring {
    type Err = Error;

    fn from_str(s: &str) -> Result<Ring> {
        make_ring(s)
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            RingKind::Integers => write!(f, "ZZ"),
            RingKind::Rationals => write!(f, "QQ"),
            RingKind::PrimeField => write!(f, "GF({})", self.characteristic),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Value {
    Int(BigInt),
    Rat(BigRational),
    Mod(u32),
}

/// An element of a [`Ring`] in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    ring: Ring,
    value: Value,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// Checked binary arithmetic; fails with `RingMismatch` when the rings differ.
pub fn scalar_arith(op: ArithOp, a: &Scalar, b: &Scalar) -> Result<Scalar> {
    if a.ring != b.ring {
        return Err(Error::RingMismatch {
            left: a.ring,
            right: b.ring,
        });
    }
    Ok(match op {
        ArithOp::Add => a.add(b),
        ArithOp::Sub => a.sub(b),
        ArithOp::Mul => a.mul(b),
    })
}

pub fn scalar_inv(a: &Scalar) -> Result<Scalar> {
    a.inv()
}

fn reduce_mod(n: &BigInt, p: u32) -> u32 {
    let r = n.mod_floor(&BigInt::from(p));
    r.to_u32().expect("residue fits in u32")
}

impl Scalar {
    pub fn zero(ring: Ring) -> Scalar {
        let value = match ring.kind {
            RingKind::Integers => Value::Int(BigInt::zero()),
            RingKind::Rationals => Value::Rat(BigRational::zero()),
            RingKind::PrimeField => Value::Mod(0),
        };
        Scalar { ring, value }
    }

    pub fn one(ring: Ring) -> Scalar {
        Scalar::from_bigint(ring, BigInt::one())
    }

    pub fn from_bigint(ring: Ring, n: BigInt) -> Scalar {
        let value = match ring.kind {
            RingKind::Integers => Value::Int(n),
            RingKind::Rationals => Value::Rat(BigRational::from_integer(n)),
            RingKind::PrimeField => Value::Mod(reduce_mod(&n, ring.characteristic)),
        };
        Scalar { ring, value }
    }

    /// The element `num/den`. Over ZZ the quotient must be exact.
    pub fn from_ratio(ring: Ring, num: BigInt, den: BigInt) -> Result<Scalar> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match ring.kind {
            RingKind::Integers => {
                let (q, r) = num.div_rem(&den);
                if !r.is_zero() {
                    return Err(Error::NotInvertible(den.to_string()));
                }
                Ok(Scalar::from_bigint(ring, q))
            }
            RingKind::Rationals => Ok(Scalar {
                ring,
                value: Value::Rat(BigRational::new(num, den)),
            }),
            RingKind::PrimeField => {
                let d = Scalar::from_bigint(ring, den);
                let n = Scalar::from_bigint(ring, num);
                Ok(n.mul(&d.inv()?))
            }
        }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn is_zero(&self) -> bool {
        match &self.value {
            Value::Int(n) => n.is_zero(),
            Value::Rat(q) => q.is_zero(),
            Value::Mod(r) => *r == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.value {
            Value::Int(n) => n.is_one(),
            Value::Rat(q) => q.is_one(),
            Value::Mod(r) => *r == 1,
        }
    }

    /// True when the printed form carries a leading minus sign.
    pub fn is_negative(&self) -> bool {
        match &self.value {
            Value::Int(n) => n.is_negative(),
            Value::Rat(q) => q.is_negative(),
            Value::Mod(_) => false,
        }
    }

    fn modulus(&self) -> u64 {
        self.ring.characteristic as u64
    }

    // Unchecked arithmetic: callers guarantee matching rings.

    pub fn add(&self, other: &Scalar) -> Scalar {
        debug_assert_eq!(self.ring, other.ring);
        let value = match (&self.value, &other.value) {
            (Value::Int(a), Value::Int(b)) => Value::Int(a + b),
            (Value::Rat(a), Value::Rat(b)) => Value::Rat(a + b),
            (Value::Mod(a), Value::Mod(b)) => {
                Value::Mod(((*a as u64 + *b as u64) % self.modulus()) as u32)
            }
            _ => panic!("ring mismatch: {} vs {}", self.ring, other.ring),
        };
        Scalar {
            ring: self.ring,
            value,
        }
    }

    pub fn neg(&self) -> Scalar {
        let value = match &self.value {
            Value::Int(a) => Value::Int(-a),
            Value::Rat(a) => Value::Rat(-a),
            Value::Mod(a) => Value::Mod(if *a == 0 {
                0
            } else {
                (self.modulus() - *a as u64) as u32
            }),
        };
        Scalar {
            ring: self.ring,
            value,
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        debug_assert_eq!(self.ring, other.ring);
        let value = match (&self.value, &other.value) {
            (Value::Int(a), Value::Int(b)) => Value::Int(a * b),
            (Value::Rat(a), Value::Rat(b)) => Value::Rat(a * b),
            (Value::Mod(a), Value::Mod(b)) => {
                Value::Mod(((*a as u64 * *b as u64) % self.modulus()) as u32)
            }
            _ => panic!("ring mismatch: {} vs {}", self.ring, other.ring),
        };
        Scalar {
            ring: self.ring,
            value,
        }
    }

    pub fn pow(&self, mut k: u32) -> Scalar {
        let mut base = self.clone();
        let mut acc = Scalar::one(self.ring);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let value = match &self.value {
            Value::Int(a) => {
                if a.abs().is_one() {
                    Value::Int(a.clone())
                } else {
                    return Err(Error::NotInvertible(a.to_string()));
                }
            }
            Value::Rat(a) => Value::Rat(a.recip()),
            Value::Mod(a) => {
                // Fermat: a^(p-2)
                let p = self.modulus();
                let mut base = *a as u64;
                let mut e = p - 2;
                let mut acc = 1u64;
                while e > 0 {
                    if e & 1 == 1 {
                        acc = acc * base % p;
                    }
                    base = base * base % p;
                    e >>= 1;
                }
                Value::Mod(acc as u32)
            }
        };
        Ok(Scalar {
            ring: self.ring,
            value,
        })
    }

    /// `self / other` over a field.
    pub fn div(&self, other: &Scalar) -> Result<Scalar> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar> {
        scalar_arith(ArithOp::Add, self, other)
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar> {
        scalar_arith(ArithOp::Sub, self, other)
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar> {
        scalar_arith(ArithOp::Mul, self, other)
    }

    /// Absolute value of the printed form (identity over GF(p)).
    pub fn abs(&self) -> Scalar {
        if self.is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }

    /// Re-derives the canonical representative. Always the identity on
    /// values produced by this module.
    pub fn canonicalize(&self) -> Scalar {
        let value = match &self.value {
            Value::Int(a) => Value::Int(a.clone()),
            Value::Rat(a) => Value::Rat(BigRational::new(a.numer().clone(), a.denom().clone())),
            Value::Mod(a) => Value::Mod(a % self.ring.characteristic),
        };
        Scalar {
            ring: self.ring,
            value,
        }
    }

    /// Integer embedding ZZ -> QQ; other rings are returned unchanged.
    pub fn lift_to_rationals(&self) -> Scalar {
        match &self.value {
            Value::Int(a) => Scalar {
                ring: Ring::rationals(),
                value: Value::Rat(BigRational::from_integer(a.clone())),
            },
            _ => self.clone(),
        }
    }

    /// Reduction ZZ -> GF(p).
    pub fn reduce_to(&self, target: Ring) -> Result<Scalar> {
        match (&self.value, target.kind) {
            (Value::Int(a), RingKind::PrimeField) => Ok(Scalar::from_bigint(target, a.clone())),
            _ if self.ring == target => Ok(self.clone()),
            _ => Err(Error::RingMismatch {
                left: self.ring,
                right: target,
            }),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.value {
            Value::Int(a) => write!(f, "{a}"),
            Value::Rat(a) => {
                if a.denom().is_one() {
                    write!(f, "{}", a.numer())
                } else {
                    write!(f, "{}/{}", a.numer(), a.denom())
                }
            }
            Value::Mod(a) => write!(f, "{a}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::from_ratio(Ring::rationals(), n.into(), d.into()).unwrap()
    }

    #[test]
    fn ring_specs() {
        let f2 = make_ring("GF(2)").unwrap();
        assert_eq!(f2.kind(), RingKind::PrimeField);
        assert_eq!(f2.characteristic(), 2);
        assert_eq!(make_ring("ZZ").unwrap(), Ring::integers());
        assert_eq!(make_ring("QQ").unwrap().characteristic(), 0);
        assert_eq!(make_ring("GF(4)"), Err(Error::NotPrime(4)));
        assert_eq!(make_ring("GF(1)"), Err(Error::NotPrime(1)));
        assert!(matches!(make_ring("RR"), Err(Error::MalformedRingSpec(_))));
        assert!(matches!(
            make_ring("GF(x)"),
            Err(Error::MalformedRingSpec(_))
        ));
        assert!(matches!(
            make_ring("GF(-3)"),
            Err(Error::MalformedRingSpec(_))
        ));
        assert_eq!(
            make_ring("GF(2147483659)"),
            Err(Error::NotPrime(2147483659))
        );
        assert_eq!(make_ring("GF(7)").unwrap().to_string(), "GF(7)");
    }

    #[test]
    fn arithmetic_examples() {
        let f2 = Ring::prime_field(2).unwrap();
        assert!(scalar_arith(ArithOp::Add, &f2.one(), &f2.one())
            .unwrap()
            .is_zero());
        assert_eq!(q(2, 3).mul(&q(3, 4)), q(1, 2));
        for r in [Ring::integers(), Ring::rationals(), f2] {
            let x = r.from_i64(5);
            assert_eq!(scalar_arith(ArithOp::Sub, &x, &x).unwrap(), r.zero());
        }
        assert!(matches!(
            scalar_arith(ArithOp::Add, &f2.one(), &Ring::integers().one()),
            Err(Error::RingMismatch { .. })
        ));
    }

    #[test]
    fn inverses() {
        let z = Ring::integers();
        assert_eq!(scalar_inv(&z.one()).unwrap(), z.one());
        assert_eq!(scalar_inv(&z.from_i64(-1)).unwrap(), z.from_i64(-1));
        let f5 = Ring::prime_field(5).unwrap();
        assert_eq!(scalar_inv(&f5.from_i64(2)).unwrap(), f5.from_i64(3));
        assert!(matches!(
            scalar_inv(&z.from_i64(2)),
            Err(Error::NotInvertible(_))
        ));
        assert_eq!(scalar_inv(&f5.zero()), Err(Error::DivisionByZero));
        assert_eq!(scalar_inv(&q(-2, 3)).unwrap(), q(-3, 2));
    }

    #[test]
    fn exhaustive_small_field_inverses() {
        for p in [2u64, 3, 5, 7] {
            let ring = Ring::prime_field(p).unwrap();
            for a in ring.elements().unwrap().into_iter().skip(1) {
                assert!(a.mul(&a.inv().unwrap()).is_one(), "p={p} a={a}");
            }
        }
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(q(4, -6).to_string(), "-2/3");
        assert_eq!(q(0, -6), q(0, 1));
        let f5 = Ring::prime_field(5).unwrap();
        assert_eq!(f5.from_i64(-1).to_string(), "4");
        assert_eq!(
            Scalar::from_ratio(f5, 1.into(), 2.into()).unwrap(),
            f5.from_i64(3)
        );
        assert!(Scalar::from_ratio(Ring::integers(), 1.into(), 2.into()).is_err());
        assert_eq!(
            Ring::integers().from_i64(-7).reduce_to(f5).unwrap(),
            f5.from_i64(3)
        );
    }

    fn arb_scalar(ring: Ring) -> BoxedStrategy<Scalar> {
        match ring.kind() {
            RingKind::Rationals => (-1000i64..1000, 1i64..50)
                .prop_map(|(n, d)| q(n, d))
                .boxed(),
            _ => (-(1i64 << 40)..(1i64 << 40))
                .prop_map(move |n| ring.from_i64(n))
                .boxed(),
        }
    }

    fn rings() -> Vec<Ring> {
        vec![
            Ring::integers(),
            Ring::rationals(),
            Ring::prime_field(2).unwrap(),
            Ring::prime_field(5).unwrap(),
            Ring::prime_field(2147483647).unwrap(),
        ]
    }

    fn arb_triple() -> impl Strategy<Value = (Scalar, Scalar, Scalar)> {
        (0usize..5).prop_flat_map(|i| {
            let ring = rings()[i];
            (arb_scalar(ring), arb_scalar(ring), arb_scalar(ring))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]

        #[test]
        fn ring_axioms((a, b, c) in arb_triple()) {
            prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.add(&b), b.add(&a));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert_eq!(a.canonicalize(), a.clone());
            prop_assert_eq!(a.mul(&b).canonicalize(), a.mul(&b));
        }
    }
}
