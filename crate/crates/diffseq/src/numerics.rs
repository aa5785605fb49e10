//! Exact arithmetic in the quadratic field ℚ(√5).
//!
//! Everything downstream (Beatty floors, word evaluators, fractional-part
//! drop bounds) is decided by exact integer computations on numbers of the
//! form (a + b√5)/d. No floating point participates in any comparison.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NumericsError {
    #[error("index {index} is below the origin {origin} of {seq}")]
    IndexOutOfRange {
        seq: &'static str,
        origin: u64,
        index: u64,
    },
}

/// Integer square root of a `u128`, exact.
///
/// Seeds from the hardware sqrt, then corrects with integer comparisons
/// only, so the result is independent of float rounding.
pub fn isqrt_u128(n: u128) -> u128 {
    if n == 0 {
        return 0;
    }
    let mut x = (n as f64).sqrt() as u128;
    while x != 0 && x.checked_mul(x).is_none_or(|s| s > n) {
        x -= 1;
    }
    while (x + 1).checked_mul(x + 1).is_some_and(|s| s <= n) {
        x += 1;
    }
    x
}

/// Integer square root of an arbitrary-precision natural number.
///
/// Newton descent from a power-of-two seed that is provably at least √n:
/// the iterate strictly decreases while it exceeds ⌊√n⌋ and stalls exactly
/// there, so the first non-decrease is the answer.
pub fn isqrt(n: &BigUint) -> BigUint {
    if n.bits() <= 126 {
        let small = n.to_u128().expect("fits in u128 by bit count");
        return BigUint::from(isqrt_u128(small));
    }
    let mut x: BigUint = BigUint::one() << (n.bits().div_ceil(2) as usize);
    loop {
        let y: BigUint = (&x + n / &x) >> 1;
        if y >= x {
            break;
        }
        x = y;
    }
    debug_assert!(&x * &x <= *n);
    debug_assert!((&x + 1u32) * (&x + 1u32) > *n);
    x
}

/// The integer sequences the difference sets are built from.
///
/// Index origins are fixed per tag: f₁ = f₂ = 1, ℓ₀ = 2, p₁ = 3 (with
/// p₂ = 0, p₃ = 2), g₁ = 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SeqId {
    Fibonacci,
    Lucas,
    Perrin,
    G,
}

impl SeqId {
    /// Smallest valid index for this sequence.
    pub fn origin(self) -> u64 {
        match self {
            SeqId::Fibonacci => 1,
            SeqId::Lucas => 0,
            SeqId::Perrin => 1,
            SeqId::G => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SeqId::Fibonacci => "fibonacci",
            SeqId::Lucas => "lucas",
            SeqId::Perrin => "perrin",
            SeqId::G => "g",
        }
    }
}

impl FromStr for SeqId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "F" | "f" | "fibonacci" => Ok(SeqId::Fibonacci),
            "L" | "l" | "lucas" => Ok(SeqId::Lucas),
            "P" | "p" | "perrin" => Ok(SeqId::Perrin),
            "G" | "g" => Ok(SeqId::G),
            other => Err(format!("unknown sequence {other:?} (expected F, G, L or P)")),
        }
    }
}

/// n-th term of the sequence, by its recurrence, as an exact big integer.
pub fn seq_value(id: SeqId, n: u64) -> Result<BigInt, NumericsError> {
    if n < id.origin() {
        return Err(NumericsError::IndexOutOfRange {
            seq: id.name(),
            origin: id.origin(),
            index: n,
        });
    }
    Ok(match id {
        SeqId::Fibonacci => fibonacci(n),
        SeqId::Lucas => lucas(n),
        SeqId::Perrin => {
            // p₁ = 3, p₂ = 0, p₃ = 2, pₙ = pₙ₋₂ + pₙ₋₃
            let mut window: [BigInt; 3] = [BigInt::from(3), BigInt::zero(), BigInt::from(2)];
            if n <= 3 {
                return Ok(window[(n - 1) as usize].clone());
            }
            for _ in 4..=n {
                let next = &window[1] + &window[0];
                window.rotate_left(1);
                window[2] = next;
            }
            window[2].clone()
        }
        SeqId::G => fibonacci(3 * n) / 2,
    })
}

/// fₙ with f₀ = 0, f₁ = f₂ = 1.
pub fn fibonacci(n: u64) -> BigInt {
    fib_pair(n).0
}

/// ℓₙ with ℓ₀ = 2, ℓ₁ = 1.
pub fn lucas(n: u64) -> BigInt {
    let mut a = BigInt::from(2);
    let mut b = BigInt::one();
    if n == 0 {
        return a;
    }
    for _ in 1..n {
        let next = &a + &b;
        a = b;
        b = next;
    }
    b
}

/// (fₙ, fₙ₋₁); fₙ₋₁ is 0 when n = 0.
fn fib_pair(n: u64) -> (BigInt, BigInt) {
    let mut prev = BigInt::zero(); // f₀ when the loop has run
    let mut cur = BigInt::zero();
    let mut next = BigInt::one();
    for _ in 0..n {
        prev = cur;
        cur = next.clone();
        next = &cur + &prev;
    }
    (cur, prev)
}

/// An exact element (a + b√5)/d of ℚ(√5).
///
/// Kept canonical at all times: d ≥ 1 and gcd(a, b, d) = 1, so structural
/// equality is value equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadRat {
    a: BigInt,
    b: BigInt,
    d: BigInt,
}

impl QuadRat {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, d: impl Into<BigInt>) -> Self {
        Self::make(a.into(), b.into(), d.into())
    }

    fn make(mut a: BigInt, mut b: BigInt, mut d: BigInt) -> Self {
        assert!(!d.is_zero(), "QuadRat denominator must be nonzero");
        if d.is_negative() {
            a = -a;
            b = -b;
            d = -d;
        }
        if a.is_zero() && b.is_zero() {
            return QuadRat {
                a,
                b,
                d: BigInt::one(),
            };
        }
        let g = a.gcd(&b).gcd(&d);
        if !g.is_one() {
            a /= &g;
            b /= &g;
            d /= &g;
        }
        QuadRat { a, b, d }
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        QuadRat {
            a: n.into(),
            b: BigInt::zero(),
            d: BigInt::one(),
        }
    }

    pub fn from_ratio(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Self {
        Self::make(p.into(), BigInt::zero(), q.into())
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// φ = (1 + √5)/2.
    pub fn phi() -> Self {
        QuadRat::new(1, 1, 2)
    }

    pub fn sqrt5() -> Self {
        QuadRat::new(0, 1, 1)
    }

    pub fn rational_part(&self) -> (&BigInt, &BigInt, &BigInt) {
        (&self.a, &self.b, &self.d)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Exact sign: +1, 0 or −1, decided by integer arithmetic only.
    ///
    /// When a and b disagree in sign the comparison reduces to a² vs 5b².
    pub fn sign(&self) -> i8 {
        let sa = sign_of(&self.a);
        let sb = sign_of(&self.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 {
            return sb;
        }
        if sa == sb {
            return sa;
        }
        let t = &self.a * &self.a - BigInt::from(5) * &self.b * &self.b;
        if sa > 0 {
            sign_of(&t)
        } else {
            -sign_of(&t)
        }
    }

    pub fn abs(&self) -> Self {
        if self.sign() < 0 {
            -self.clone()
        } else {
            self.clone()
        }
    }

    /// Multiplicative inverse, via the conjugate: 1/v = d(a − b√5)/(a² − 5b²).
    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "division by zero QuadRat");
        let norm = &self.a * &self.a - BigInt::from(5) * &self.b * &self.b;
        QuadRat::make(&self.d * &self.a, -(&self.d * &self.b), norm)
    }

    pub fn pow(&self, exp: i64) -> Self {
        if exp < 0 {
            return self.recip().pow(-exp);
        }
        let mut result = QuadRat::one();
        let mut base = self.clone();
        let mut e = exp as u64;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        result
    }

    /// ⌊(a + b√5)/d⌋, exact.
    ///
    /// Uses ⌊x/d⌋ = ⌊⌊x⌋/d⌋ for integer d ≥ 1, with ⌊b√5⌋ from the integer
    /// square root of 5b².
    pub fn floor(&self) -> BigInt {
        let five_b2 = (BigInt::from(5) * &self.b * &self.b)
            .to_biguint()
            .expect("square is non-negative");
        let root = BigInt::from(isqrt(&five_b2));
        // b√5 is irrational for b ≠ 0, so the ceiling is root + 1.
        let floor_b_sqrt5 = if self.b.is_negative() { -root - 1 } else { root };
        (&self.a + floor_b_sqrt5).div_floor(&self.d)
    }

    /// Fractional part, in [0, 1).
    pub fn frac(&self) -> Self {
        self - &QuadRat::from_int(self.floor())
    }

    /// Round 1000·self to the nearest integer, halves away from zero.
    pub fn round_half_away_thousandths(&self) -> BigInt {
        let v = self * &QuadRat::from_int(1000);
        let z = v.floor();
        let t = v.frac();
        let half = QuadRat::from_ratio(1, 2);
        match t.cmp(&half) {
            Ordering::Greater => z + 1,
            Ordering::Less => z,
            Ordering::Equal => {
                if v.sign() >= 0 {
                    z + 1
                } else {
                    z
                }
            }
        }
    }

    /// Approximate value, for report annotations only.
    pub fn to_f64(&self) -> f64 {
        let a = bigint_to_f64(&self.a);
        let b = bigint_to_f64(&self.b);
        let d = bigint_to_f64(&self.d);
        (a + b * 5f64.sqrt()) / d
    }
}

fn sign_of(n: &BigInt) -> i8 {
    match n.sign() {
        num_bigint::Sign::Minus => -1,
        num_bigint::Sign::NoSign => 0,
        num_bigint::Sign::Plus => 1,
    }
}

fn bigint_to_f64(n: &BigInt) -> f64 {
    n.to_f64().unwrap_or(f64::NAN)
}

impl fmt::Display for QuadRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            if self.d.is_one() {
                write!(f, "{}", self.a)
            } else {
                write!(f, "{}/{}", self.a, self.d)
            }
        } else if self.d.is_one() {
            write!(f, "({} + {}√5)", self.a, self.b)
        } else {
            write!(f, "({} + {}√5)/{}", self.a, self.b, self.d)
        }
    }
}

impl PartialOrd for QuadRat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadRat {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self - other).sign() {
            -1 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        }
    }
}

impl Add for &QuadRat {
    type Output = QuadRat;

    fn add(self, rhs: &QuadRat) -> QuadRat {
        QuadRat::make(
            &self.a * &rhs.d + &rhs.a * &self.d,
            &self.b * &rhs.d + &rhs.b * &self.d,
            &self.d * &rhs.d,
        )
    }
}

impl Sub for &QuadRat {
    type Output = QuadRat;

    fn sub(self, rhs: &QuadRat) -> QuadRat {
        QuadRat::make(
            &self.a * &rhs.d - &rhs.a * &self.d,
            &self.b * &rhs.d - &rhs.b * &self.d,
            &self.d * &rhs.d,
        )
    }
}

impl Mul for &QuadRat {
    type Output = QuadRat;

    fn mul(self, rhs: &QuadRat) -> QuadRat {
        QuadRat::make(
            &self.a * &rhs.a + BigInt::from(5) * &self.b * &rhs.b,
            &self.a * &rhs.b + &self.b * &rhs.a,
            &self.d * &rhs.d,
        )
    }
}

impl Div for &QuadRat {
    type Output = QuadRat;

    // division in the field is multiplication by the conjugate reciprocal
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &QuadRat) -> QuadRat {
        self * &rhs.recip()
    }
}

impl Neg for QuadRat {
    type Output = QuadRat;

    fn neg(self) -> QuadRat {
        QuadRat {
            a: -self.a,
            b: -self.b,
            d: self.d,
        }
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for QuadRat {
            type Output = QuadRat;
            fn $method(self, rhs: QuadRat) -> QuadRat {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);
forward_owned_binop!(Div, div);

/// Exact φⁿ for any integer n, as a QuadRat.
///
/// For n ≥ 1 this equals fₙφ + fₙ₋₁ (with f₀ = 0); negative exponents go
/// through φ⁻¹ = φ − 1 exactly.
pub fn phi_power(n: i64) -> QuadRat {
    QuadRat::phi().pow(n)
}

/// ⌊mφ⌋, computed as ⌊(m + isqrt(5m²))/2⌋. No floating point.
pub fn beatty_floor(m: u64) -> u64 {
    assert!(m <= 1 << 62, "beatty_floor argument too large");
    let m128 = m as u128;
    let s = isqrt_u128(5 * m128 * m128);
    ((m128 + s) / 2) as u64
}

/// {mφ} = mφ − ⌊mφ⌋ as an exact QuadRat; lies in (0, 1) for m ≥ 1.
pub fn frac_phi(m: u64) -> QuadRat {
    let fl = beatty_floor(m);
    let m = BigInt::from(m);
    QuadRat::new(&m - BigInt::from(2) * BigInt::from(fl), m, BigInt::from(2))
}

#[derive(Debug, Clone)]
pub struct ClosedFormEntry {
    pub n: u64,
    pub identity: &'static str,
    pub pass: bool,
}

#[derive(Debug, Clone)]
pub struct ClosedFormReport {
    pub n_max: u64,
    pub entries: Vec<ClosedFormEntry>,
}

impl ClosedFormReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }
}

/// Checks, as exact QuadRat equalities for 1 ≤ n ≤ n_max:
///   fₙ = (φⁿ − (−φ)⁻ⁿ)/√5,
///   ℓₙ = φⁿ + (−φ)⁻ⁿ,
///   fₙ/φ − fₙ₋₁ = (−1)ⁿ⁺¹φ⁻ⁿ  (n ≥ 2).
pub fn verify_closed_forms(n_max: u64) -> ClosedFormReport {
    assert!(n_max >= 2);
    let sqrt5 = QuadRat::sqrt5();
    let mut entries = Vec::new();
    for n in 1..=n_max {
        let fib_n = QuadRat::from_int(fibonacci(n));
        let lucas_n = QuadRat::from_int(lucas(n));
        let phi_n = phi_power(n as i64);
        // (−φ)⁻ⁿ = (−1)ⁿ φ⁻ⁿ
        let neg_phi_inv_n = if n % 2 == 0 {
            phi_power(-(n as i64))
        } else {
            -phi_power(-(n as i64))
        };

        let fib_rhs = &(&phi_n - &neg_phi_inv_n) / &sqrt5;
        entries.push(ClosedFormEntry {
            n,
            identity: "fib-closed-form",
            pass: fib_rhs == fib_n,
        });

        let lucas_rhs = &phi_n + &neg_phi_inv_n;
        entries.push(ClosedFormEntry {
            n,
            identity: "lucas-closed-form",
            pass: lucas_rhs == lucas_n,
        });

        if n >= 2 {
            let lhs = &(&fib_n / &QuadRat::phi()) - &QuadRat::from_int(fibonacci(n - 1));
            let rhs = if n % 2 == 0 {
                -phi_power(-(n as i64))
            } else {
                phi_power(-(n as i64))
            };
            entries.push(ClosedFormEntry {
                n,
                identity: "fib-div-phi",
                pass: lhs == rhs,
            });
        }
    }
    ClosedFormReport { n_max, entries }
}
