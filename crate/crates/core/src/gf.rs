//! Arithmetic in small finite fields GF(p^m).
//!
//! An element is stored as the integer `c_0 + c_1 p + ... + c_{m-1} p^{m-1}`
//! where `c_i` is the coefficient of `x^i` in its polynomial-basis form. That
//! integer is canonical, so element equality is integer equality. Nonzero
//! elements are also reachable as powers `z^i` of a primitive element `z`; the
//! exponent/logarithm tables are built once when the field is created.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 16;

/// Shared handle to an immutable field description.
pub type Field = Arc<FieldSpec>;

/// A finite field GF(p^m) with an explicit monic irreducible defining polynomial.
pub struct FieldSpec {
    p: u32,
    m: u32,
    q: u32,
    /// Coefficients `[c_m, ..., c_0]`, highest degree first.
    poly: Vec<u32>,
    primitive: u32,
    designated: bool,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p
            && self.m == other.m
            && self.poly == other.poly
            && self.primitive == other.primitive
    }
}

impl Eq for FieldSpec {}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Remainder of `num` divided by the monic `div` over GF(p); both low degree first.
fn poly_rem(num: &[u32], div: &[u32], p: u32) -> Vec<u32> {
    let mut r = num.to_vec();
    let dd = div.len() - 1;
    while r.len() > dd {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dd;
        if lead != 0 {
            for (i, &c) in div.iter().enumerate() {
                let sub = (lead as u64 * c as u64 % p as u64) as u32;
                r[shift + i] = (r[shift + i] + p - sub) % p;
            }
        }
        r.pop();
    }
    r
}

/// Trial division by every monic polynomial of degree 1..=m/2.
fn is_irreducible(poly_low: &[u32], p: u32) -> bool {
    let m = poly_low.len() - 1;
    for d in 1..=m / 2 {
        let count = (p as u64).pow(d as u32);
        for lower in 0..count {
            let mut div = Vec::with_capacity(d + 1);
            let mut v = lower;
            for _ in 0..d {
                div.push((v % p as u64) as u32);
                v /= p as u64;
            }
            div.push(1);
            if poly_rem(poly_low, &div, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// Standard primitive polynomials for GF(2^m), `[c_m, ..., c_0]`.
fn binary_default_poly(m: u32) -> Option<Vec<u32>> {
    let taps: &[u32] = match m {
        1 => &[0],
        2 => &[1, 0],
        3 => &[1, 0],
        4 => &[1, 0],
        5 => &[2, 0],
        6 => &[1, 0],
        7 => &[1, 0],
        8 => &[4, 3, 2, 0],
        9 => &[4, 0],
        10 => &[3, 0],
        11 => &[2, 0],
        12 => &[6, 4, 1, 0],
        13 => &[4, 3, 1, 0],
        14 => &[10, 6, 1, 0],
        15 => &[1, 0],
        16 => &[12, 3, 1, 0],
        _ => return None,
    };
    let mut coeffs = vec![0u32; m as usize + 1];
    coeffs[0] = 1;
    for &t in taps {
        coeffs[(m - t) as usize] = 1;
    }
    Some(coeffs)
}

/// Builds GF(p^m) from a defining polynomial given as `[c_m, ..., c_0]`.
///
/// The primitive element used for the `z^i` notation is `x` whenever `x` is
/// primitive, otherwise the smallest primitive element in integer order.
pub fn make_field(p: u32, m: u32, poly: &[u32]) -> Result<Field> {
    FieldSpec::build(p, m, poly, None).map(Arc::new)
}

/// Like [`make_field`], with a designated primitive element (integer form).
pub fn make_field_with_primitive(p: u32, m: u32, poly: &[u32], primitive: u32) -> Result<Field> {
    FieldSpec::build(p, m, poly, Some(primitive)).map(Arc::new)
}

/// GF(2^m) with a standard primitive polynomial (`x^3+x+1` for m = 3).
pub fn binary_field(m: u32) -> Result<Field> {
    let poly = binary_default_poly(m)
        .ok_or_else(|| Error::InvalidParameter(format!("no default polynomial for GF(2^{m})")))?;
    make_field(2, m, &poly)
}

/// Smallest default binary field with at least `min_order` elements.
pub fn smallest_binary_field(min_order: usize) -> Result<Field> {
    let mut m = 1;
    while (1usize << m) < min_order {
        m += 1;
    }
    binary_field(m)
}

impl FieldSpec {
    fn build(p: u32, m: u32, poly: &[u32], designated: Option<u32>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if m == 0 {
            return Err(Error::InvalidPolynomial("degree must be at least 1".into()));
        }
        let q = (p as u64)
            .checked_pow(m)
            .filter(|&q| q <= MAX_ORDER)
            .ok_or(Error::FieldTooLarge((p as u64).saturating_pow(m)))?;
        if poly.len() != m as usize + 1 {
            return Err(Error::InvalidPolynomial(format!(
                "expected {} coefficients for degree {m}, got {}",
                m + 1,
                poly.len()
            )));
        }
        if poly[0] != 1 {
            return Err(Error::InvalidPolynomial("polynomial must be monic".into()));
        }
        if let Some(&c) = poly.iter().find(|&&c| c >= p) {
            return Err(Error::InvalidPolynomial(format!("coefficient {c} not in GF({p})")));
        }
        let poly_low: Vec<u32> = poly.iter().rev().copied().collect();
        if !is_irreducible(&poly_low, p) {
            return Err(Error::ReduciblePolynomial(p));
        }
        let mut field = FieldSpec {
            p,
            m,
            q: q as u32,
            poly: poly.to_vec(),
            primitive: 0,
            designated: designated.is_some(),
            exp: Vec::new(),
            log: Vec::new(),
        };
        let primitive = match designated {
            Some(g) => {
                if g == 0 || g >= field.q || field.slow_order(g) != field.q as u64 - 1 {
                    return Err(Error::NotPrimitive(g));
                }
                g
            }
            None => {
                let x = if m > 1 { p } else { 1 };
                std::iter::once(x)
                    .chain(1..field.q)
                    .find(|&g| field.slow_order(g) == field.q as u64 - 1)
                    .expect("every finite field has a primitive element")
            }
        };
        field.primitive = primitive;
        field.build_tables();
        Ok(field)
    }

    fn digits(&self, mut v: u32) -> Vec<u32> {
        let mut d = Vec::with_capacity(self.m as usize);
        for _ in 0..self.m {
            d.push(v % self.p);
            v /= self.p;
        }
        d
    }

    fn undigits(&self, d: &[u32]) -> u32 {
        d.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    /// Polynomial-basis product, used only while building the tables.
    fn slow_mul(&self, a: u32, b: u32) -> u32 {
        if self.m == 1 {
            return (a as u64 * b as u64 % self.p as u64) as u32;
        }
        let (da, db) = (self.digits(a), self.digits(b));
        let mut prod = vec![0u32; da.len() + db.len() - 1];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % self.p as u64) as u32;
            }
        }
        let poly_low: Vec<u32> = self.poly.iter().rev().copied().collect();
        let mut r = poly_rem(&prod, &poly_low, self.p);
        r.resize(self.m as usize, 0);
        self.undigits(&r)
    }

    fn slow_order(&self, a: u32) -> u64 {
        if a == 0 {
            return 0;
        }
        let mut acc = a;
        let mut e = 1u64;
        while acc != 1 {
            acc = self.slow_mul(acc, a);
            e += 1;
        }
        e
    }

    fn build_tables(&mut self) {
        let n = self.q as usize - 1;
        let mut exp = vec![0u32; 2 * n];
        let mut log = vec![0u32; self.q as usize];
        let mut x = 1u32;
        for (i, slot) in exp.iter_mut().take(n).enumerate() {
            *slot = x;
            log[x as usize] = i as u32;
            x = self.slow_mul(x, self.primitive);
        }
        for i in n..2 * n {
            exp[i] = exp[i - n];
        }
        self.exp = exp;
        self.log = log;
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    /// Number of elements q = p^m.
    pub fn order(&self) -> u32 {
        self.q
    }

    /// Defining polynomial as `[c_m, ..., c_0]`.
    pub fn polynomial(&self) -> &[u32] {
        &self.poly
    }

    /// Integer form of the primitive element `z`.
    pub fn primitive_element(&self) -> u32 {
        self.primitive
    }

    pub fn has_designated_primitive(&self) -> bool {
        self.designated
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        if self.m == 1 {
            return (a + b) % self.p;
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut scale = 1;
        for _ in 0..self.m {
            out += ((a % self.p + b % self.p) % self.p) * scale;
            a /= self.p;
            b /= self.p;
            scale *= self.p;
        }
        out
    }

    pub fn neg(&self, a: u32) -> u32 {
        if self.p == 2 {
            return a;
        }
        if self.m == 1 {
            return (self.p - a) % self.p;
        }
        let mut a = a;
        let mut out = 0;
        let mut scale = 1;
        for _ in 0..self.m {
            out += ((self.p - a % self.p) % self.p) * scale;
            a /= self.p;
            scale *= self.p;
        }
        out
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let n = self.q - 1;
        Some(self.exp[((n - self.log[a as usize]) % n) as usize])
    }

    pub fn div(&self, a: u32, b: u32) -> Option<u32> {
        self.inv(b).map(|ib| self.mul(a, ib))
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let n = (self.q - 1) as u64;
        self.exp[((self.log[a as usize] as u64 * (e % n)) % n) as usize]
    }

    /// `z^i` in integer form.
    pub fn z_pow(&self, i: u64) -> u32 {
        self.exp[(i % (self.q as u64 - 1)) as usize]
    }

    /// Discrete logarithm base `z`; `None` for zero.
    pub fn log_z(&self, a: u32) -> Option<u32> {
        (a != 0).then(|| self.log[a as usize])
    }

    /// Multiplicative order computed from the logarithm table.
    pub fn multiplicative_order(&self, a: u32) -> Option<u64> {
        let l = self.log_z(a)? as u64;
        let n = self.q as u64 - 1;
        Some(n / gcd(l, n))
    }

    pub fn contains(&self, a: u32) -> bool {
        a < self.q
    }

    /// Renders an element as `0`, `1` or `z^i`.
    pub fn format_elem(&self, a: u32) -> String {
        match self.log_z(a) {
            None => "0".to_string(),
            Some(0) => "1".to_string(),
            Some(i) => format!("z^{i}"),
        }
    }

    /// Parses `0`, `1`, `z`, or `z^i`.
    pub fn parse_elem(&self, s: &str) -> Result<u32> {
        let s = s.trim();
        match s {
            "0" => Ok(0),
            "1" => Ok(1),
            "z" => Ok(self.z_pow(1)),
            _ => {
                let e = s
                    .strip_prefix("z^")
                    .and_then(|e| e.parse::<u64>().ok())
                    .ok_or_else(|| Error::Parse(format!("bad field element {s:?}")))?;
                Ok(self.z_pow(e))
            }
        }
    }

    pub fn element(self: &Arc<Self>, value: u32) -> Result<FieldElement> {
        if !self.contains(value) {
            return Err(Error::IndexOutOfRange { index: value as usize, len: self.q as usize - 1 });
        }
        Ok(FieldElement { field: Arc::clone(self), value })
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Literal form `GF(p^m):poly=[c_m,...,c_0]`, with `:prim=g` appended when a
/// primitive element was designated explicitly.
impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coeffs: Vec<String> = self.poly.iter().map(|c| c.to_string()).collect();
        write!(f, "GF({}^{}):poly=[{}]", self.p, self.m, coeffs.join(","))?;
        if self.designated {
            write!(f, ":prim={}", self.primitive)?;
        }
        Ok(())
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad field literal {s:?}"));
        let s = s.trim();
        let rest = s.strip_prefix("GF(").ok_or_else(bad)?;
        let (pm, rest) = rest.split_once(')').ok_or_else(bad)?;
        let (p, m) = pm.split_once('^').ok_or_else(bad)?;
        let p: u32 = p.trim().parse().map_err(|_| bad())?;
        let m: u32 = m.trim().parse().map_err(|_| bad())?;
        let rest = rest.strip_prefix(":poly=[").ok_or_else(bad)?;
        let (coeffs, rest) = rest.split_once(']').ok_or_else(bad)?;
        let poly = coeffs
            .split(',')
            .map(|c| c.trim().parse::<u32>().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?;
        let prim = match rest {
            "" => None,
            r => Some(
                r.strip_prefix(":prim=")
                    .and_then(|g| g.trim().parse::<u32>().ok())
                    .ok_or_else(bad)?,
            ),
        };
        FieldSpec::build(p, m, &poly, prim)
    }
}

/// Parses a field literal into a shared handle.
pub fn parse_field(s: &str) -> Result<Field> {
    s.parse::<FieldSpec>().map(Arc::new)
}

pub fn same_field(a: &Field, b: &Field) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// A value bound to its field; arithmetic checks that both operands agree.
#[derive(Clone)]
pub struct FieldElement {
    field: Field,
    value: u32,
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn arith(&self, other: &FieldElement, op: ArithOp) -> Result<FieldElement> {
        if !same_field(&self.field, &other.field) {
            return Err(Error::FieldMismatch);
        }
        let f = &self.field;
        let (a, b) = (self.value, other.value);
        let value = match op {
            ArithOp::Add => f.add(a, b),
            ArithOp::Sub => f.sub(a, b),
            ArithOp::Mul => f.mul(a, b),
            ArithOp::Div => f.div(a, b).ok_or(Error::DivisionByZero)?,
        };
        Ok(FieldElement { field: Arc::clone(f), value })
    }

    pub fn inverse(&self) -> Result<FieldElement> {
        let value = self.field.inv(self.value).ok_or(Error::DivisionByZero)?;
        Ok(FieldElement { field: Arc::clone(&self.field), value })
    }

    pub fn pow(&self, e: u64) -> FieldElement {
        FieldElement { field: Arc::clone(&self.field), value: self.field.pow(self.value, e) }
    }

    /// Smallest `e >= 1` with `self^e = 1`.
    pub fn order(&self) -> Result<u64> {
        self.field.multiplicative_order(self.value).ok_or(Error::ZeroElement)
    }

    pub fn is_primitive(&self) -> bool {
        self.order().is_ok_and(|e| e == self.field.order() as u64 - 1)
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value && same_field(&self.field, &other.field)
    }
}

impl Eq for FieldElement {}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.field.format_elem(self.value))
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.field.format_elem(self.value))
    }
}

pub fn arith(a: &FieldElement, b: &FieldElement, op: ArithOp) -> Result<FieldElement> {
    a.arith(b, op)
}

pub fn element_order(a: &FieldElement) -> Result<u64> {
    a.order()
}
