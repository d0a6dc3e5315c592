//! The ground field `Q(tau)`: rational functions in one formal constant
//! `tau` with arbitrary-precision integer coefficients.
//!
//! `tau` stands for the transcendental constant `2*pi*i`, so keeping it
//! formal makes every identity in the crate exact while letting reports
//! display `tau`-exponents explicitly.
//!
//! Serialized form: sums of terms like `3/2*tau^-2`, with a parenthesized
//! fallback `(p)/(q)` for denominators that are not monomials. The parser
//! round-trips with the printer bit-exactly.

use alloc::borrow::ToOwned;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::ring::{Field, Ring};

// ---------------------------------------------------------------------
// Integer polynomials in tau (dense, lowest degree first)
// ---------------------------------------------------------------------

type Poly = Vec<BigInt>;

fn poly_trim(p: &mut Poly) {
    while p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
}

fn poly_is_zero(p: &Poly) -> bool {
    p.is_empty()
}

fn poly_add(a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![BigInt::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] += c;
    }
    poly_trim(&mut out);
    out
}

fn poly_neg(a: &Poly) -> Poly {
    a.iter().map(|c| -c).collect()
}

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    if poly_is_zero(a) || poly_is_zero(b) {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        for (j, cb) in b.iter().enumerate() {
            out[i + j] += ca * cb;
        }
    }
    poly_trim(&mut out);
    out
}

fn poly_scale(a: &Poly, c: &BigInt) -> Poly {
    if c.is_zero() {
        return Vec::new();
    }
    a.iter().map(|x| x * c).collect()
}

/// Content: gcd of all coefficients, nonnegative. Content of 0 is 0.
fn poly_content(a: &Poly) -> BigInt {
    let mut g = BigInt::zero();
    for c in a {
        g = g.gcd(c);
    }
    g
}

/// Exact division, panics if not divisible.
fn poly_div_exact(a: &Poly, b: &Poly) -> Poly {
    assert!(!poly_is_zero(b), "division by zero polynomial");
    if poly_is_zero(a) {
        return Vec::new();
    }
    let mut rem = a.clone();
    let mut quot = vec![BigInt::zero(); a.len().saturating_sub(b.len()) + 1];
    let lead_b = b.last().unwrap().clone();
    while rem.len() >= b.len() {
        let lead_r = rem.last().unwrap().clone();
        let (q, r) = lead_r.div_rem(&lead_b);
        assert!(r.is_zero(), "inexact polynomial division");
        let shift = rem.len() - b.len();
        quot[shift] = q.clone();
        for (i, c) in b.iter().enumerate() {
            rem[shift + i] -= &q * c;
        }
        poly_trim(&mut rem);
        if poly_is_zero(&rem) {
            break;
        }
    }
    assert!(poly_is_zero(&rem), "inexact polynomial division");
    poly_trim(&mut quot);
    quot
}

/// Primitive part with positive leading coefficient.
fn poly_primitive(a: &Poly) -> Poly {
    if poly_is_zero(a) {
        return Vec::new();
    }
    let mut c = poly_content(a);
    if a.last().unwrap().is_negative() {
        c = -c;
    }
    a.iter().map(|x| x / &c).collect()
}

/// Pseudo-remainder of a by b (lead(b)^k * a = q*b + r).
fn poly_pseudo_rem(a: &Poly, b: &Poly) -> Poly {
    let mut rem = a.clone();
    let lead_b = b.last().unwrap().clone();
    while rem.len() >= b.len() && !poly_is_zero(&rem) {
        let lead_r = rem.last().unwrap().clone();
        let shift = rem.len() - b.len();
        // rem <- lead_b * rem - lead_r * tau^shift * b
        rem = poly_scale(&rem, &lead_b);
        for (i, c) in b.iter().enumerate() {
            rem[shift + i] -= &lead_r * c;
        }
        poly_trim(&mut rem);
    }
    rem
}

/// Primitive gcd via the Euclidean algorithm with pseudo-division.
fn poly_gcd(a: &Poly, b: &Poly) -> Poly {
    if poly_is_zero(a) {
        return poly_primitive(b);
    }
    if poly_is_zero(b) {
        return poly_primitive(a);
    }
    let mut x = poly_primitive(a);
    let mut y = poly_primitive(b);
    if x.len() < y.len() {
        core::mem::swap(&mut x, &mut y);
    }
    loop {
        let r = poly_pseudo_rem(&x, &y);
        if poly_is_zero(&r) {
            return y;
        }
        x = y;
        y = poly_primitive(&r);
        if x.len() < y.len() {
            core::mem::swap(&mut x, &mut y);
        }
    }
}

// ---------------------------------------------------------------------
// Scalar
// ---------------------------------------------------------------------

/// An element of `Q(tau)`, stored as a reduced fraction of integer
/// polynomials in `tau`.
///
/// Invariants: the denominator is nonzero with positive leading
/// coefficient, the polynomial gcd of numerator and denominator is 1,
/// and the integer contents of numerator and denominator are coprime.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    num: Poly,
    den: Poly,
}

impl Scalar {
    fn reduce(mut num: Poly, mut den: Poly) -> Scalar {
        assert!(!poly_is_zero(&den), "zero denominator");
        if poly_is_zero(&num) {
            return Scalar {
                num: Vec::new(),
                den: vec![BigInt::one()],
            };
        }
        let g = poly_gcd(&num, &den);
        if g.len() > 1 || g.first().map_or(false, |c| !c.is_one()) {
            num = poly_div_exact(&num, &g);
            den = poly_div_exact(&den, &g);
        }
        let mut c = poly_content(&num).gcd(&poly_content(&den));
        if den.last().unwrap().is_negative() {
            c = -c;
        }
        if !c.is_one() {
            num = num.iter().map(|x| x / &c).collect();
            den = den.iter().map(|x| x / &c).collect();
        }
        Scalar { num, den }
    }

    pub fn zero() -> Scalar {
        Scalar {
            num: Vec::new(),
            den: vec![BigInt::one()],
        }
    }

    pub fn one() -> Scalar {
        Scalar::from_int(1)
    }

    pub fn from_int(n: i64) -> Scalar {
        Scalar::from_bigint(BigInt::from(n))
    }

    pub fn from_bigint(n: BigInt) -> Scalar {
        if n.is_zero() {
            Scalar::zero()
        } else {
            Scalar {
                num: vec![n],
                den: vec![BigInt::one()],
            }
        }
    }

    /// The fraction `p/q` of plain integers.
    pub fn ratio(p: i64, q: i64) -> Scalar {
        assert!(q != 0, "zero denominator");
        Scalar::reduce(vec![BigInt::from(p)], vec![BigInt::from(q)])
    }

    /// `tau^e`, with `e` possibly negative.
    pub fn tau_pow(e: i32) -> Scalar {
        let mono = |k: usize| {
            let mut p = vec![BigInt::zero(); k + 1];
            p[k] = BigInt::one();
            p
        };
        if e >= 0 {
            Scalar {
                num: mono(e as usize),
                den: vec![BigInt::one()],
            }
        } else {
            Scalar {
                num: vec![BigInt::one()],
                den: mono((-e) as usize),
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        poly_is_zero(&self.num)
    }

    pub fn is_one(&self) -> bool {
        self.num.len() == 1 && self.num[0].is_one() && self.den.len() == 1 && self.den[0].is_one()
    }

    pub fn inv(&self) -> Scalar {
        assert!(!self.is_zero(), "inverse of zero");
        Scalar::reduce(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut out = Scalar::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Evaluate at a rational value of `tau`, as an `f64`. Used only by
    /// the quadrature layer, which is the sole floating-point consumer.
    pub fn to_f64(&self, tau: f64) -> f64 {
        let eval = |p: &Poly| -> f64 {
            let mut acc = 0.0;
            for c in p.iter().rev() {
                acc = acc * tau + bigint_to_f64(c);
            }
            acc
        };
        eval(&self.num) / eval(&self.den)
    }

    /// Splits off the `tau`-power of a scalar of the monomial form
    /// `r * tau^e`; returns `None` if the scalar is not of that form.
    pub fn as_tau_monomial(&self) -> Option<(Scalar, i32)> {
        let nz = |p: &Poly| p.iter().filter(|c| !c.is_zero()).count();
        if self.is_zero() {
            return Some((Scalar::zero(), 0));
        }
        if nz(&self.num) == 1 && nz(&self.den) == 1 {
            let en = self.num.iter().position(|c| !c.is_zero()).unwrap();
            let ed = self.den.iter().position(|c| !c.is_zero()).unwrap();
            let r = Scalar::reduce(vec![self.num[en].clone()], vec![self.den[ed].clone()]);
            Some((r, en as i32 - ed as i32))
        } else {
            None
        }
    }
}

fn bigint_to_f64(c: &BigInt) -> f64 {
    // num-bigint's ToPrimitive lives behind std-ish features; a manual
    // base-2^32 fold is enough for report output.
    let (sign, digits) = c.to_u32_digits();
    let mut acc = 0.0;
    for d in digits.iter().rev() {
        acc = acc * 4294967296.0 + *d as f64;
    }
    match sign {
        num_bigint::Sign::Minus => -acc,
        _ => acc,
    }
}

impl Ring for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn one() -> Self {
        Scalar::one()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
}

impl Field for Scalar {
    fn inv(&self) -> Self {
        Scalar::inv(self)
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let num = poly_add(&poly_mul(&self.num, &rhs.den), &poly_mul(&rhs.num, &self.den));
        Scalar::reduce(num, poly_mul(&self.den, &rhs.den))
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        let num = poly_add(
            &poly_mul(&self.num, &rhs.den),
            &poly_neg(&poly_mul(&rhs.num, &self.den)),
        );
        Scalar::reduce(num, poly_mul(&self.den, &rhs.den))
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        Scalar::reduce(poly_mul(&self.num, &rhs.num), poly_mul(&self.den, &rhs.den))
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        assert!(!rhs.is_zero(), "division by zero");
        Scalar::reduce(poly_mul(&self.num, &rhs.den), poly_mul(&self.den, &rhs.num))
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            num: poly_neg(&self.num),
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                $tr::$m(&self, &rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

// ---------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------

fn fmt_poly_laurent(f: &mut fmt::Formatter<'_>, terms: &[(BigInt, BigInt, i32)]) -> fmt::Result {
    // terms: (numerator, denominator > 0, tau exponent), highest exponent first
    for (idx, (p, q, e)) in terms.iter().enumerate() {
        let neg = p.is_negative();
        let abs = p.abs();
        if idx == 0 {
            if neg {
                write!(f, "-")?;
            }
        } else if neg {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        let coef_is_unit = abs.is_one() && q.is_one();
        if !coef_is_unit || *e == 0 {
            write!(f, "{}", abs)?;
            if !q.is_one() {
                write!(f, "/{}", q)?;
            }
        }
        if *e != 0 {
            if !coef_is_unit {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "tau")?;
            } else {
                write!(f, "tau^{}", e)?;
            }
        }
    }
    Ok(())
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // Monomial denominator c*tau^m: print as a Laurent sum in tau.
        let den_nz: Vec<usize> = self
            .den
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, _)| i)
            .collect();
        if den_nz.len() == 1 {
            let m = den_nz[0];
            let c = self.den[m].clone();
            let mut terms = Vec::new();
            for (i, a) in self.num.iter().enumerate().rev() {
                if a.is_zero() {
                    continue;
                }
                let g = a.gcd(&c);
                terms.push((a / &g, &c / &g, i as i32 - m as i32));
            }
            return fmt_poly_laurent(f, &terms);
        }
        // General fraction: (num)/(den) with both parts plain polynomials.
        let plain = |p: &Poly| -> Vec<(BigInt, BigInt, i32)> {
            p.iter()
                .enumerate()
                .rev()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (c.clone(), BigInt::one(), i as i32))
                .collect()
        };
        write!(f, "(")?;
        fmt_poly_laurent(f, &plain(&self.num))?;
        write!(f, ")/(")?;
        fmt_poly_laurent(f, &plain(&self.den))?;
        write!(f, ")")
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

// ---------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------

/// Error from [`Scalar::parse`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseScalarError {
    pub message: String,
    pub position: usize,
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, message: &str) -> Result<T, ParseScalarError> {
        Err(ParseScalarError {
            message: message.to_owned(),
            position: self.pos,
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<BigInt, ParseScalarError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected integer");
        }
        let s = core::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        Ok(s.parse::<BigInt>().unwrap())
    }

    fn signed_integer(&mut self) -> Result<BigInt, ParseScalarError> {
        if self.eat(b'-') {
            Ok(-self.integer()?)
        } else {
            let _ = self.eat(b'+');
            self.integer()
        }
    }

    fn factor(&mut self) -> Result<Scalar, ParseScalarError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(b')') {
                    return self.err("expected ')'");
                }
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => Ok(Scalar::from_bigint(self.integer()?)),
            Some(b't') => {
                let rest = &self.bytes[self.pos..];
                if rest.len() >= 3 && &rest[..3] == b"tau" {
                    self.pos += 3;
                    let e = if self.eat(b'^') {
                        let v = self.signed_integer()?;
                        let (s, d) = v.to_u32_digits();
                        let mag = *d.first().unwrap_or(&0) as i32;
                        if s == num_bigint::Sign::Minus {
                            -mag
                        } else {
                            mag
                        }
                    } else {
                        1
                    };
                    Ok(Scalar::tau_pow(e))
                } else {
                    self.err("unknown symbol")
                }
            }
            _ => self.err("expected factor"),
        }
    }

    fn term(&mut self) -> Result<Scalar, ParseScalarError> {
        let mut v = self.factor()?;
        loop {
            if self.eat(b'*') {
                v = &v * &self.factor()?;
            } else if self.eat(b'/') {
                let f = self.factor()?;
                if f.is_zero() {
                    return self.err("division by zero");
                }
                v = &v / &f;
            } else {
                break;
            }
        }
        Ok(v)
    }

    fn expr(&mut self) -> Result<Scalar, ParseScalarError> {
        let mut v = if self.eat(b'-') {
            -self.term()?
        } else {
            let _ = self.eat(b'+');
            self.term()?
        };
        loop {
            if self.eat(b'+') {
                v = &v + &self.term()?;
            } else if self.eat(b'-') {
                v = &v - &self.term()?;
            } else {
                break;
            }
        }
        Ok(v)
    }
}

impl Scalar {
    /// Parses the textual form produced by `Display` (and more general
    /// arithmetic expressions in integers and `tau`).
    pub fn parse(input: &str) -> Result<Scalar, ParseScalarError> {
        let mut p = Parser {
            bytes: input.as_bytes(),
            pos: 0,
        };
        let v = p.expr()?;
        p.skip_ws();
        if p.pos != p.bytes.len() {
            return p.err("trailing input");
        }
        Ok(v)
    }
}

impl core::str::FromStr for Scalar {
    type Err = ParseScalarError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Scalar::parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn basic_arithmetic() {
        let a = Scalar::ratio(3, 2);
        let b = Scalar::ratio(-1, 3);
        assert_eq!(&(&a + &b) - &b, a);
        assert_eq!(&a * &a.inv(), Scalar::one());
        assert!((&b - &b).is_zero());
    }

    #[test]
    fn tau_powers_cancel() {
        let t = Scalar::tau_pow(3);
        let s = Scalar::tau_pow(-3);
        assert_eq!(&t * &s, Scalar::one());
        assert_eq!(Scalar::tau_pow(1).pow(4), Scalar::tau_pow(4));
    }

    #[test]
    fn reduction_is_canonical() {
        // (tau^2 - 1)/(tau - 1) = tau + 1
        let num = &Scalar::tau_pow(2) - &Scalar::one();
        let den = &Scalar::tau_pow(1) - &Scalar::one();
        let q = &num / &den;
        assert_eq!(q, &Scalar::tau_pow(1) + &Scalar::one());
    }

    #[test]
    fn display_forms() {
        assert_eq!(Scalar::zero().to_string(), "0");
        assert_eq!(Scalar::ratio(3, 2).to_string(), "3/2");
        let x = &Scalar::ratio(3, 2) * &Scalar::tau_pow(-2);
        assert_eq!(x.to_string(), "3/2*tau^-2");
        let y = &Scalar::tau_pow(1) - &Scalar::from_int(2);
        assert_eq!(y.to_string(), "tau - 2");
        let z = &Scalar::one() / &(&Scalar::tau_pow(1) + &Scalar::one());
        assert_eq!(z.to_string(), "(1)/(tau + 1)");
    }

    #[test]
    fn parse_round_trip() {
        let samples = [
            "0",
            "-7",
            "3/2",
            "3/2*tau^-2",
            "tau",
            "-tau^3 + 1/2",
            "(tau^2 + 1)/(tau + 2)",
            "2*tau^-1 - 5/3*tau^2",
        ];
        for s in samples {
            let v = Scalar::parse(s).unwrap();
            let printed = v.to_string();
            let v2 = Scalar::parse(&printed).unwrap();
            assert_eq!(v, v2, "round trip failed for {}", s);
        }
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(Scalar::parse("").is_err());
        assert!(Scalar::parse("1 +").is_err());
        assert!(Scalar::parse("taux").is_err());
        assert!(Scalar::parse("1/0").is_err());
    }

    #[test]
    fn tau_monomial_detection() {
        let x = &Scalar::ratio(5, 3) * &Scalar::tau_pow(-2);
        assert_eq!(x.as_tau_monomial(), Some((Scalar::ratio(5, 3), -2)));
        let y = &Scalar::tau_pow(1) + &Scalar::one();
        assert_eq!(y.as_tau_monomial(), None);
    }
}
