//! The scalar tower: exact field arithmetic with dynamic quadratic extensions.
//!
//! Three kinds of field are supported, freely nestable:
//!
//! * `rational` — arbitrary-precision rationals, always stored reduced with a
//!   positive denominator;
//! * `prime p` — the field of residues modulo an odd prime `p`, stored as the
//!   canonical representative in `[0, p)`;
//! * `quadratic(base, d)` — the extension `base(√d)` for a non-square `d`,
//!   stored as coefficient pairs `a + b·√d`. Towers of any finite depth are
//!   built by repeated extension.
//!
//! A [`Field`] is a cheaply clonable handle describing one of these; a
//! [`FieldElement`] carries its field with it. Equality of fields and of
//! elements is structural on canonical forms, so exact equality of two
//! computations is a plain `==`.
//!
//! Characteristic two is rejected outright: every construction here divides
//! by two sooner or later.
//!
//! Binary operations on elements of *different* fields are programming
//! errors and panic; use [`Field::embed`] to move elements up a tower first.
//! Division by zero is available in both flavors: the `/` operator panics,
//! while [`FieldElement::checked_div`] reports [`FieldError::DivisionByZero`].

mod codec;
mod sqrt;

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub use codec::parse_rational;

/// Largest accepted prime modulus. Products of two residues must fit in
/// `u128`, and the square-root search assumes comfortable headroom.
pub const MAX_PRIME: u64 = 1 << 62;

/// Errors from field construction and checked arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    /// Checked division or inversion of zero.
    #[error("division by zero")]
    DivisionByZero,
    /// Two elements from structurally different fields met in one operation.
    #[error("elements belong to different fields")]
    FieldMismatch,
    /// A quadratic extension was requested with radicand zero.
    #[error("cannot extend by the square root of zero")]
    ZeroRadicand,
    /// A quadratic extension was requested with a radicand that is already a
    /// square; the witness root is included.
    #[error("radicand is already a square with root {root}")]
    SquareRadicand {
        /// A square root of the offending radicand, in the base field.
        root: Box<FieldElement>,
    },
    /// The prime-field modulus is composite, even, or out of range.
    #[error("invalid prime modulus {p}: {reason}")]
    InvalidModulus {
        /// The rejected modulus.
        p: u64,
        /// Why it was rejected.
        reason: &'static str,
    },
    /// Text or JSON that does not denote an element of the target field.
    #[error("parse error: {0}")]
    Parse(String),
}

#[derive(Debug)]
enum FieldRepr {
    Rational,
    Prime { p: u64 },
    Quadratic { base: Field, d: FieldElement },
}

/// A handle to a field description. Clones share the same representation;
/// equality is structural, so two independently built descriptions of the
/// same tower compare equal.
#[derive(Clone)]
pub struct Field(Arc<FieldRepr>);

impl Field {
    /// The field of rational numbers.
    pub fn rational() -> Field {
        static RATIONAL: OnceLock<Field> = OnceLock::new();
        RATIONAL
            .get_or_init(|| Field(Arc::new(FieldRepr::Rational)))
            .clone()
    }

    /// The prime field of residues modulo `p`. Requires `p` to be an odd
    /// prime no larger than [`MAX_PRIME`].
    pub fn prime(p: u64) -> Result<Field, FieldError> {
        if p == 2 {
            return Err(FieldError::InvalidModulus {
                p,
                reason: "characteristic two is not supported",
            });
        }
        if p > MAX_PRIME {
            return Err(FieldError::InvalidModulus {
                p,
                reason: "modulus exceeds the supported range",
            });
        }
        if !sqrt::is_prime_u64(p) {
            return Err(FieldError::InvalidModulus {
                p,
                reason: "modulus is not prime",
            });
        }
        Ok(Field(Arc::new(FieldRepr::Prime { p })))
    }

    /// The quadratic extension `base(√d)`. `d` must be a nonzero non-square
    /// element of `base`; otherwise the construction is rejected, naming a
    /// root of `d` when one exists.
    pub fn quadratic(base: &Field, d: FieldElement) -> Result<Field, FieldError> {
        if d.field() != base {
            return Err(FieldError::FieldMismatch);
        }
        if d.is_zero() {
            return Err(FieldError::ZeroRadicand);
        }
        if let Some(root) = d.sqrt() {
            return Err(FieldError::SquareRadicand {
                root: Box::new(root),
            });
        }
        Ok(Field(Arc::new(FieldRepr::Quadratic {
            base: base.clone(),
            d,
        })))
    }

    /// True for the rational field.
    pub fn is_rational(&self) -> bool {
        matches!(*self.0, FieldRepr::Rational)
    }

    /// The modulus, if this is a prime field.
    pub fn prime_modulus(&self) -> Option<u64> {
        match *self.0 {
            FieldRepr::Prime { p } => Some(p),
            _ => None,
        }
    }

    /// The base field of a quadratic extension.
    pub fn base(&self) -> Option<&Field> {
        match &*self.0 {
            FieldRepr::Quadratic { base, .. } => Some(base),
            _ => None,
        }
    }

    /// The radicand of a quadratic extension.
    pub fn radicand(&self) -> Option<&FieldElement> {
        match &*self.0 {
            FieldRepr::Quadratic { d, .. } => Some(d),
            _ => None,
        }
    }

    /// Number of quadratic extensions stacked on the ground field.
    pub fn depth(&self) -> usize {
        match &*self.0 {
            FieldRepr::Quadratic { base, .. } => base.depth() + 1,
            _ => 0,
        }
    }

    /// The prime or rational field at the bottom of the tower.
    pub fn ground(&self) -> &Field {
        match &*self.0 {
            FieldRepr::Quadratic { base, .. } => base.ground(),
            _ => self,
        }
    }

    /// The additive identity.
    pub fn zero(&self) -> FieldElement {
        self.element_from_value(match &*self.0 {
            FieldRepr::Rational => Value::Rational(BigRational::zero()),
            FieldRepr::Prime { .. } => Value::Prime(0),
            FieldRepr::Quadratic { base, .. } => {
                Value::Quadratic(Box::new([base.zero(), base.zero()]))
            }
        })
    }

    /// The multiplicative identity.
    pub fn one(&self) -> FieldElement {
        self.from_i64(1)
    }

    /// The image of the integer `n` in this field.
    pub fn from_i64(&self, n: i64) -> FieldElement {
        self.from_bigint(&BigInt::from(n))
    }

    /// The image of an arbitrary-precision integer in this field.
    pub fn from_bigint(&self, n: &BigInt) -> FieldElement {
        self.element_from_value(match &*self.0 {
            FieldRepr::Rational => Value::Rational(BigRational::from(n.clone())),
            FieldRepr::Prime { p } => {
                let m = BigInt::from(*p);
                let r = ((n % &m) + &m) % &m;
                Value::Prime(u64::try_from(r).expect("reduced residue fits in u64"))
            }
            FieldRepr::Quadratic { base, .. } => {
                Value::Quadratic(Box::new([base.from_bigint(n), base.zero()]))
            }
        })
    }

    /// The image of `n/m` in this field. Fails with
    /// [`FieldError::DivisionByZero`] if `m` maps to zero (for a prime field,
    /// when `p` divides `m`).
    pub fn from_ratio(&self, n: i64, m: i64) -> Result<FieldElement, FieldError> {
        self.from_i64(n).checked_div(&self.from_i64(m))
    }

    /// The image of a rational number in this field (denominator must be a
    /// unit, which only fails over a prime field dividing it).
    pub fn from_big_rational(&self, r: &BigRational) -> Result<FieldElement, FieldError> {
        if self.is_rational() {
            return Ok(self.element_from_value(Value::Rational(r.clone())));
        }
        self.from_bigint(r.numer())
            .checked_div(&self.from_bigint(r.denom()))
    }

    /// Lift an element of an ancestor field into this one. Returns
    /// [`FieldError::FieldMismatch`] if `x`'s field is not this field or a
    /// base of it somewhere down the tower.
    pub fn embed(&self, x: &FieldElement) -> Result<FieldElement, FieldError> {
        if &x.field == self {
            return Ok(x.clone());
        }
        match &*self.0 {
            FieldRepr::Quadratic { base, .. } => {
                let a = base.embed(x)?;
                Ok(self.element_from_value(Value::Quadratic(Box::new([a, base.zero()]))))
            }
            _ => Err(FieldError::FieldMismatch),
        }
    }

    fn element_from_value(&self, value: Value) -> FieldElement {
        FieldElement {
            field: self.clone(),
            value,
        }
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Field) -> bool {
        if Arc::ptr_eq(&self.0, &other.0) {
            return true;
        }
        match (&*self.0, &*other.0) {
            (FieldRepr::Rational, FieldRepr::Rational) => true,
            (FieldRepr::Prime { p: a }, FieldRepr::Prime { p: b }) => a == b,
            (
                FieldRepr::Quadratic { base: b1, d: d1 },
                FieldRepr::Quadratic { base: b2, d: d2 },
            ) => b1 == b2 && d1 == d2,
            _ => false,
        }
    }
}

impl Eq for Field {}

impl Hash for Field {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match &*self.0 {
            FieldRepr::Rational => 0u8.hash(state),
            FieldRepr::Prime { p } => {
                1u8.hash(state);
                p.hash(state);
            }
            FieldRepr::Quadratic { base, d } => {
                2u8.hash(state);
                base.hash(state);
                d.hash(state);
            }
        }
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(crate) enum Value {
    Rational(BigRational),
    Prime(u64),
    Quadratic(Box<[FieldElement; 2]>),
}

/// An exact scalar, tagged with the [`Field`] it lives in.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    field: Field,
    value: Value,
}

/// Result of [`extend_by_sqrt`]: the (possibly unchanged) field together
/// with an element of it squaring to the requested radicand.
#[derive(Debug, Clone)]
pub struct SqrtExtension {
    /// The field containing the root. Equal to the input field when the
    /// radicand was already a square there.
    pub field: Field,
    /// An element with `root * root == field.embed(d)`.
    pub root: FieldElement,
}

impl FieldElement {
    /// The field this element belongs to.
    pub fn field(&self) -> &Field {
        &self.field
    }

    /// True exactly for the additive identity.
    pub fn is_zero(&self) -> bool {
        match &self.value {
            Value::Rational(r) => r.is_zero(),
            Value::Prime(r) => *r == 0,
            Value::Quadratic(ab) => ab[0].is_zero() && ab[1].is_zero(),
        }
    }

    /// True exactly for the multiplicative identity.
    pub fn is_one(&self) -> bool {
        match &self.value {
            Value::Rational(r) => r.is_one(),
            Value::Prime(r) => *r == 1,
            Value::Quadratic(ab) => ab[0].is_one() && ab[1].is_zero(),
        }
    }

    fn assert_same_field(&self, other: &FieldElement) {
        assert!(
            self.field == other.field,
            "field mismatch: {} vs {}",
            self.field,
            other.field
        );
    }

    fn prime_modulus(&self) -> u64 {
        self.field
            .prime_modulus()
            .expect("prime value in non-prime field")
    }

    /// `self + other`. Panics on a field mismatch.
    pub fn add(&self, other: &FieldElement) -> FieldElement {
        self.assert_same_field(other);
        let value = match (&self.value, &other.value) {
            (Value::Rational(a), Value::Rational(b)) => Value::Rational(a + b),
            (Value::Prime(a), Value::Prime(b)) => Value::Prime((a + b) % self.prime_modulus()),
            (Value::Quadratic(x), Value::Quadratic(y)) => {
                Value::Quadratic(Box::new([x[0].add(&y[0]), x[1].add(&y[1])]))
            }
            _ => unreachable!("matching fields imply matching value kinds"),
        };
        self.field.element_from_value(value)
    }

    /// `self - other`. Panics on a field mismatch.
    pub fn sub(&self, other: &FieldElement) -> FieldElement {
        self.add(&other.neg())
    }

    /// `-self`.
    pub fn neg(&self) -> FieldElement {
        let value = match &self.value {
            Value::Rational(a) => Value::Rational(-a),
            Value::Prime(a) => {
                let p = self.prime_modulus();
                Value::Prime(if *a == 0 { 0 } else { p - a })
            }
            Value::Quadratic(x) => Value::Quadratic(Box::new([x[0].neg(), x[1].neg()])),
        };
        self.field.element_from_value(value)
    }

    /// `self * other`. Panics on a field mismatch.
    pub fn mul(&self, other: &FieldElement) -> FieldElement {
        self.assert_same_field(other);
        let value = match (&self.value, &other.value) {
            (Value::Rational(a), Value::Rational(b)) => Value::Rational(a * b),
            (Value::Prime(a), Value::Prime(b)) => {
                let p = self.prime_modulus() as u128;
                Value::Prime(((*a as u128 * *b as u128) % p) as u64)
            }
            (Value::Quadratic(x), Value::Quadratic(y)) => {
                let d = self.field.radicand().expect("quadratic field").clone();
                let a = x[0].mul(&y[0]).add(&x[1].mul(&y[1]).mul(&d));
                let b = x[0].mul(&y[1]).add(&x[1].mul(&y[0]));
                Value::Quadratic(Box::new([a, b]))
            }
            _ => unreachable!("matching fields imply matching value kinds"),
        };
        self.field.element_from_value(value)
    }

    /// Multiply by a machine integer.
    pub fn mul_i64(&self, n: i64) -> FieldElement {
        self.mul(&self.field.from_i64(n))
    }

    /// `self / 2`. Always defined: characteristic two is excluded.
    pub fn half(&self) -> FieldElement {
        self.mul(
            &self
                .field
                .from_i64(2)
                .checked_inv()
                .expect("two is a unit away from characteristic two"),
        )
    }

    /// The multiplicative inverse, or [`FieldError::DivisionByZero`].
    pub fn checked_inv(&self) -> Result<FieldElement, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let value = match &self.value {
            Value::Rational(a) => Value::Rational(a.recip()),
            Value::Prime(a) => Value::Prime(sqrt::inv_mod(*a, self.prime_modulus())),
            Value::Quadratic(x) => {
                // (a + b√d)⁻¹ = (a − b√d) / (a² − b²d); the norm is nonzero
                // because d is a non-square.
                let d = self.field.radicand().expect("quadratic field").clone();
                let norm = x[0].mul(&x[0]).sub(&x[1].mul(&x[1]).mul(&d));
                let norm_inv = norm
                    .checked_inv()
                    .expect("norm of a nonzero element is nonzero");
                Value::Quadratic(Box::new([
                    x[0].mul(&norm_inv),
                    x[1].neg().mul(&norm_inv),
                ]))
            }
        };
        Ok(self.field.element_from_value(value))
    }

    /// `self / other`, or [`FieldError::DivisionByZero`]. Panics on a field
    /// mismatch.
    pub fn checked_div(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.assert_same_field(other);
        Ok(self.mul(&other.checked_inv()?))
    }

    /// `self` raised to a small non-negative power.
    pub fn pow(&self, mut n: u32) -> FieldElement {
        let mut acc = self.field.one();
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            n >>= 1;
        }
        acc
    }

    /// The square `self * self`.
    pub fn square(&self) -> FieldElement {
        self.mul(self)
    }

    /// For a tower element whose extension coefficient is zero, the same
    /// value as an element of the base field.
    pub fn project_to_base(&self) -> Option<FieldElement> {
        match &self.value {
            Value::Quadratic(x) if x[1].is_zero() => Some(x[0].clone()),
            _ => None,
        }
    }

    /// The value as a rational number, if the element sits in the rational
    /// part of a (possibly deep) tower over the rationals.
    pub fn rational_value(&self) -> Option<BigRational> {
        match &self.value {
            Value::Rational(r) => Some(r.clone()),
            Value::Prime(_) => None,
            Value::Quadratic(x) => {
                if x[1].is_zero() {
                    x[0].rational_value()
                } else {
                    None
                }
            }
        }
    }

    /// The residue, for an element of a prime field.
    pub fn prime_value(&self) -> Option<u64> {
        match &self.value {
            Value::Prime(r) => Some(*r),
            _ => None,
        }
    }

    /// The coefficient pair `(a, b)` of a tower element `a + b·√d`.
    pub fn quadratic_parts(&self) -> Option<(&FieldElement, &FieldElement)> {
        match &self.value {
            Value::Quadratic(x) => Some((&x[0], &x[1])),
            _ => None,
        }
    }

    /// Exact sign under the real embedding that sends every adjoined `√d`
    /// (for positive `d`) to the positive real root: `-1`, `0`, or `1`.
    /// `None` when the field is not orderable this way — any prime field,
    /// or a tower with a negative radicand somewhere.
    pub fn real_sign(&self) -> Option<i8> {
        match &self.value {
            Value::Rational(r) => Some(if r.is_zero() {
                0
            } else if r.is_positive() {
                1
            } else {
                -1
            }),
            Value::Prime(_) => None,
            Value::Quadratic(x) => {
                let d = self.field.radicand().expect("quadratic field");
                if d.real_sign()? != 1 {
                    return None;
                }
                let sa = x[0].real_sign()?;
                let sb = x[1].real_sign()?;
                match (sa, sb) {
                    (0, s) | (s, 0) => Some(s),
                    (a, b) if a == b => Some(a),
                    _ => {
                        // Opposite signs: compare a² against b²·d.
                        let t = x[0]
                            .square()
                            .sub(&x[1].square().mul(d))
                            .real_sign()
                            .expect("base of an ordered tower is ordered");
                        Some(sa * t)
                    }
                }
            }
        }
    }

    /// A deterministic total order on elements of one field, used for
    /// canonical choices and stable output ordering. Numeric for rationals,
    /// residue order for prime fields, lexicographic on coefficient pairs
    /// for towers. Not compatible with the field operations. Panics on a
    /// field mismatch.
    pub fn canonical_cmp(&self, other: &FieldElement) -> Ordering {
        self.assert_same_field(other);
        match (&self.value, &other.value) {
            (Value::Rational(a), Value::Rational(b)) => a.cmp(b),
            (Value::Prime(a), Value::Prime(b)) => a.cmp(b),
            (Value::Quadratic(x), Value::Quadratic(y)) => x[0]
                .canonical_cmp(&y[0])
                .then_with(|| x[1].canonical_cmp(&y[1])),
            _ => unreachable!("matching fields imply matching value kinds"),
        }
    }

    /// Sign of the first nonzero coefficient in the recursive coefficient
    /// expansion: the canonical-representative picker for square roots.
    /// For a prime residue `r`, "positive" means `1 ≤ r ≤ (p−1)/2`.
    pub(crate) fn sign_key(&self) -> i8 {
        match &self.value {
            Value::Rational(r) => {
                if r.is_zero() {
                    0
                } else if r.is_positive() {
                    1
                } else {
                    -1
                }
            }
            Value::Prime(r) => {
                let p = self.prime_modulus();
                if *r == 0 {
                    0
                } else if 2 * *r < p {
                    1
                } else {
                    -1
                }
            }
            Value::Quadratic(x) => {
                let k = x[0].sign_key();
                if k != 0 {
                    k
                } else {
                    x[1].sign_key()
                }
            }
        }
    }

    pub(crate) fn value_kind(&self) -> &Value {
        &self.value
    }
}

/// Extend `field` by a square root of `d`. If `d` is already a square, the
/// field comes back unchanged with its canonical root; otherwise a quadratic
/// extension is built. Rational radicands are normalized to a squarefree
/// integer (so extending by `600` and by `6` produce the same tower), and
/// prime-field radicands are normalized to the least non-residue, keeping
/// tower descriptions canonical.
pub fn extend_by_sqrt(field: &Field, d: &FieldElement) -> Result<SqrtExtension, FieldError> {
    if d.field() != field {
        return Err(FieldError::FieldMismatch);
    }
    if d.is_zero() {
        return Err(FieldError::ZeroRadicand);
    }
    if let Some(root) = d.sqrt() {
        return Ok(SqrtExtension {
            field: field.clone(),
            root,
        });
    }
    let (radicand, scale) = sqrt::normalize_radicand(field, d);
    let ext = Field::quadratic(field, radicand)?;
    let b = ext
        .base()
        .expect("freshly built extension")
        .embed(&scale)
        .expect("scale lives in the base");
    let root = FieldElement {
        field: ext.clone(),
        value: Value::Quadratic(Box::new([field.zero(), b])),
    };
    debug_assert_eq!(root.square(), ext.embed(d).expect("d lives in the base"));
    Ok(SqrtExtension { field: ext, root })
}

pub(crate) fn quadratic_element(field: &Field, a: FieldElement, b: FieldElement) -> FieldElement {
    debug_assert!(field.base().is_some());
    FieldElement {
        field: field.clone(),
        value: Value::Quadratic(Box::new([a, b])),
    }
}

// Operator sugar is reference-only (`&a + &b`), mirroring the big-integer
// crates: by-value impls would also capture method-call syntax like
// `x.mul(&y)` on borrowed places and force moves.
macro_rules! element_binop {
    ($trait:ident, $method:ident, $impl:ident) => {
        impl $trait for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                FieldElement::$impl(self, rhs)
            }
        }
    };
}

element_binop!(Add, add, add);
element_binop!(Sub, sub, sub);
element_binop!(Mul, mul, mul);

impl Div for &FieldElement {
    type Output = FieldElement;
    fn div(self, rhs: &FieldElement) -> FieldElement {
        self.checked_div(rhs).expect("division by zero")
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement::neg(self)
    }
}

#[cfg(test)]
mod tests;
