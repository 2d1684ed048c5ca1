//! Exact square roots in every supported field, with deterministic
//! canonical representatives.
//!
//! The canonical root is the one whose first nonzero coefficient (in the
//! recursive tower expansion) is positive: for rationals the non-negative
//! root, for prime fields the smaller residue of the pair `{r, p−r}`, for
//! towers the coefficientwise choice. Determinism matters more than the
//! particular convention: reports and golden outputs depend on it.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{quadratic_element, Field, FieldElement, Value};

impl FieldElement {
    /// The canonical square root, if `self` is a square in its own field.
    /// `sqrt(x)` is `Some(r)` exactly when `r * r == x` has a solution, and
    /// the returned `r` satisfies that identity.
    pub fn sqrt(&self) -> Option<FieldElement> {
        match &self.value {
            Value::Rational(r) => sqrt_rational(r).map(|s| self.field.element_from_value(Value::Rational(s))),
            Value::Prime(r) => {
                let p = self.field.prime_modulus().expect("prime field");
                sqrt_mod_p(*r, p).map(|s| self.field.element_from_value(Value::Prime(s)))
            }
            Value::Quadratic(_) => self.sqrt_quadratic(),
        }
    }

    /// True when `self` has a square root in its own field.
    pub fn is_square(&self) -> bool {
        self.sqrt().is_some()
    }

    fn sqrt_quadratic(&self) -> Option<FieldElement> {
        let field = &self.field;
        let d = field.radicand().expect("quadratic field");
        let (a, b) = self.quadratic_parts().expect("quadratic value");
        let base = field.base().expect("quadratic field");
        if b.is_zero() {
            // a + 0·√d: either a is a base square, or a/d is (root v·√d).
            if let Some(s) = a.sqrt() {
                return Some(canonical_root(quadratic_element(field, s, base.zero())));
            }
            if let Ok(t) = a.checked_div(d) {
                if let Some(v) = t.sqrt() {
                    return Some(canonical_root(quadratic_element(field, base.zero(), v)));
                }
            }
            return None;
        }
        // (u + v√d)² = a + b√d forces u² + v²d = a and 2uv = b, so u² is a
        // root of t² − a·t + b²d/4, whose discriminant is the norm a² − b²d.
        // The norm of a square is a square, so a root in the base is
        // necessary; with b ≠ 0 both u and v are nonzero.
        let norm = a.square().sub(&b.square().mul(d));
        let n = norm.sqrt()?;
        for candidate in [a.add(&n).half(), a.sub(&n).half()] {
            if candidate.is_zero() {
                continue;
            }
            if let Some(u) = candidate.sqrt() {
                let v = b.checked_div(&u.mul_i64(2)).expect("u is nonzero");
                let root = quadratic_element(field, u, v);
                debug_assert_eq!(root.square(), *self);
                return Some(canonical_root(root));
            }
        }
        None
    }
}

fn canonical_root(r: FieldElement) -> FieldElement {
    if r.sign_key() < 0 {
        r.neg()
    } else {
        r
    }
}

/// Non-negative exact rational square root.
fn sqrt_rational(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let n = sqrt_bigint(r.numer())?;
    let d = sqrt_bigint(r.denom())?;
    Some(BigRational::new(n, d))
}

fn sqrt_bigint(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let s = n.sqrt();
    if &s * &s == *n {
        Some(s)
    } else {
        None
    }
}

/// Canonical square root modulo an odd prime: the smaller of the two
/// residues, found by a fully deterministic Tonelli–Shanks.
pub(super) fn sqrt_mod_p(n: u64, p: u64) -> Option<u64> {
    if n == 0 {
        return Some(0);
    }
    if pow_mod(n, (p - 1) / 2, p) != 1 {
        return None;
    }
    let r = if p % 4 == 3 {
        pow_mod(n, (p + 1) / 4, p)
    } else {
        tonelli_shanks(n, p)
    };
    Some(r.min(p - r))
}

fn tonelli_shanks(n: u64, p: u64) -> u64 {
    // p ≡ 1 (mod 4) here. Factor p − 1 = q·2^s with q odd.
    let mut q = p - 1;
    let mut s = 0u32;
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let z = least_nonresidue(p);
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(n, q, p);
    let mut r = pow_mod(n, (q + 1) / 2, p);
    while t != 1 {
        let mut i = 0u32;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
            debug_assert!(i < m, "order computation ran away");
        }
        let mut b = c;
        for _ in 0..(m - i - 1) {
            b = mul_mod(b, b, p);
        }
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    r
}

/// Smallest quadratic non-residue of `p`, by direct scan. Deterministic,
/// and fast in practice: the least non-residue is tiny for every prime
/// anyone will use here.
pub(super) fn least_nonresidue(p: u64) -> u64 {
    (2..p)
        .find(|&z| pow_mod(z, (p - 1) / 2, p) != 1)
        .expect("odd primes have non-residues")
}

pub(super) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(super) fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

pub(super) fn inv_mod(a: u64, p: u64) -> u64 {
    // Extended Euclid on signed 128-bit accumulators.
    let (mut old_r, mut r) = (a as i128, p as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    debug_assert_eq!(old_r, 1, "inverse of a unit");
    old_s.rem_euclid(p as i128) as u64
}

/// Deterministic Miller–Rabin, exact for all `u64`.
pub(super) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Largest square divisor split: `n = s²·r` with `r` free of small square
/// factors. Trial division over a fixed prime list plus a perfect-square
/// check on the cofactor; any square factor with both primes beyond the
/// list survives into `r`, which costs only cosmetics, never correctness.
fn square_part(n: &BigInt) -> (BigInt, BigInt) {
    debug_assert!(n.is_positive());
    let mut s = BigInt::one();
    let mut rest = n.clone();
    for q in small_primes() {
        let q = BigInt::from(q);
        let qq = &q * &q;
        loop {
            let (div, rem) = rest.div_rem(&qq);
            if rem.is_zero() {
                s *= &q;
                rest = div;
            } else {
                break;
            }
        }
    }
    if let Some(r) = sqrt_bigint(&rest) {
        s *= r;
        rest = BigInt::one();
    }
    (s, rest)
}

fn small_primes() -> impl Iterator<Item = u32> {
    (2u32..=1000).filter(|&n| (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0))
}

/// Split a non-square radicand `d` into a canonical radicand plus a scale:
/// `d = radicand · scale²` with the returned radicand preferred for the
/// extension descriptor. Rational radicands become squarefree integers;
/// prime-field radicands become the least non-residue; tower radicands are
/// scaled to integral coefficient leaves with square content removed.
pub(super) fn normalize_radicand(field: &Field, d: &FieldElement) -> (FieldElement, FieldElement) {
    if let Some(r) = d.rational_value() {
        // d = n/m, so n·m = s²·r0 gives √d = (s/m)·√r0.
        let t: BigInt = r.numer() * r.denom();
        let (s, r0) = square_part(&t.abs());
        let signed_r0 = if t.is_negative() { -r0 } else { r0 };
        let radicand = field.from_bigint(&signed_r0);
        let scale = field
            .from_big_rational(&BigRational::new(s, r.denom().clone()))
            .expect("denominators are units over the rationals");
        return (radicand, scale);
    }
    if let Some(r) = d.prime_value() {
        let p = field.prime_modulus().expect("prime residue in prime field");
        let z = least_nonresidue(p);
        // d/z is a residue (quotient of two non-residues); √d = √(d/z)·√z.
        let t = mul_mod(r, inv_mod(z, p), p);
        let s = sqrt_mod_p(t, p).expect("quotient of non-residues is a residue");
        return (
            field.element_from_value(Value::Prime(z)),
            field.element_from_value(Value::Prime(s)),
        );
    }
    if field.ground().is_rational() {
        // Integralize the rational leaves and strip square integer content:
        // d·L² = g·d₀ with g = s²·g₀ squarefree-reduced.
        let mut denom_lcm = BigInt::one();
        for_each_rational_leaf(d, &mut |leaf| {
            denom_lcm = denom_lcm.lcm(leaf.denom());
        });
        let l = field
            .from_bigint(&denom_lcm)
            .mul(&field.from_bigint(&denom_lcm));
        let scaled = d.mul(&l);
        let mut content = BigInt::zero();
        for_each_rational_leaf(&scaled, &mut |leaf| {
            debug_assert!(leaf.denom().is_one());
            content = content.gcd(leaf.numer());
        });
        if !content.is_zero() {
            let (s, _) = square_part(&content);
            if !s.is_one() {
                let s_elem = field.from_bigint(&s);
                let radicand = scaled
                    .checked_div(&s_elem.square())
                    .expect("square content is nonzero");
                let scale = s_elem
                    .checked_div(&field.from_bigint(&denom_lcm))
                    .expect("lcm of denominators is nonzero");
                return (radicand, scale);
            }
        }
        let scale = field
            .from_bigint(&denom_lcm)
            .checked_inv()
            .expect("lcm of denominators is nonzero");
        return (scaled, scale);
    }
    (d.clone(), field.one())
}

fn for_each_rational_leaf(x: &FieldElement, f: &mut impl FnMut(&BigRational)) {
    match x.value_kind() {
        Value::Rational(r) => f(r),
        Value::Prime(_) => unreachable!("rational-ground tower has rational leaves"),
        Value::Quadratic(_) => {
            let (a, b) = x.quadratic_parts().expect("quadratic value");
            for_each_rational_leaf(a, f);
            for_each_rational_leaf(b, f);
        }
    }
}
