//! Basis products of the Cayley-Dickson tower `E_t` without building the algebra.
//!
//! The basis of `E_t` is indexed by `0 .. 2^t`, and bit `m - 1` of an index
//! records whether the `m`-th doubling step contributes its second component.
//! The product of two basis vectors is always a single term
//!
//! ```text
//! f_p f_q = theta_t(p, q) * prod{ g_m : bit m of p AND q } * f_{p XOR q}
//! ```
//!
//! so a product costs one XOR, one AND and a sign computed by walking at most
//! `t` levels of the doubling recursion.

use std::fmt;
use std::ops::{Mul, Neg};

use num_traits::One;

use crate::error::{Error, Result};
use crate::scalar::{Monomial, Rational, SparsePoly};

/// Largest supported level; indices are `u64` so `2^t` must fit.
pub const MAX_LEVEL: u32 = 63;

fn check_level(level: u32) -> Result<()> {
    if level > MAX_LEVEL {
        return Err(Error::LevelTooLarge(level));
    }
    Ok(())
}

fn check_index(level: u32, index: u64) -> Result<()> {
    check_level(level)?;
    if index >> level != 0 {
        return Err(Error::IndexOutOfRange { index, level });
    }
    Ok(())
}

/// Index of a basis vector `f_p` of `E_t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisIndex {
    value: u64,
    level: u32,
}

impl BasisIndex {
    pub fn new(value: u64, level: u32) -> Result<Self> {
        check_index(level, value)?;
        Ok(Self { value, level })
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn level(self) -> u32 {
        self.level
    }

    /// Binary digit `i_m` (1-based from the least significant end).
    pub fn digit(self, m: u32) -> bool {
        (1..=64).contains(&m) && self.value >> (m - 1) & 1 == 1
    }
}

impl fmt::Display for BasisIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "f{}", self.value)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn to_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn from_i64(v: i64) -> Option<Self> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

/// Value of a basis product: `sign * g-monomial(gamma_mask) * f_index`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TwistTerm {
    pub sign: Sign,
    pub gamma_mask: u64,
    pub index: u64,
}

impl TwistTerm {
    pub fn monomial(&self) -> Monomial {
        Monomial::from_mask(self.gamma_mask)
    }

    /// The coefficient `sign * prod g_m` as a polynomial.
    pub fn coefficient(&self) -> SparsePoly {
        let c = match self.sign {
            Sign::Plus => Rational::one(),
            Sign::Minus => -Rational::one(),
        };
        SparsePoly::term(c, self.monomial())
    }

    /// The coefficient with concrete parameter values substituted.
    pub fn evaluate(&self, gammas: &[Rational]) -> Result<Rational> {
        self.coefficient().eval(gammas)
    }

    /// Compact form used in tables: `-g1*g2`, `g1*f2`, `-f3`, `1`.
    pub fn cell(&self) -> String {
        let sign = if self.sign == Sign::Minus { "-" } else { "" };
        let mono = self.monomial();
        match (self.index, mono.is_one()) {
            (0, _) => format!("{sign}{mono}"),
            (i, true) => format!("{sign}f{i}"),
            (i, false) => format!("{sign}{mono}*f{i}"),
        }
    }
}

impl fmt::Display for TwistTerm {
    /// `+g1 * f6`, `-g2*g3 * f1`, `+1 * f5`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{} * f{}", self.sign.symbol(), self.monomial(), self.index)
    }
}

/// Group law of `Z_2^t`: bitwise exclusive or.
pub fn xor_index(p: BasisIndex, q: BasisIndex) -> Result<BasisIndex> {
    if p.level != q.level {
        return Err(Error::LevelMismatch(p.level, q.level));
    }
    Ok(BasisIndex { value: p.value ^ q.value, level: p.level })
}

/// Bitmask of the parameters appearing in `f_p f_q`: those `m` with `i_m = j_m = 1`.
pub fn gamma_mask(p: BasisIndex, q: BasisIndex) -> Result<u64> {
    if p.level != q.level {
        return Err(Error::LevelMismatch(p.level, q.level));
    }
    Ok(p.value & q.value)
}

/// The sign map `theta_t(p, q)`.
pub fn theta(level: u32, p: u64, q: u64) -> Result<Sign> {
    check_index(level, p)?;
    check_index(level, q)?;
    Ok(theta_unchecked(level, p, q))
}

/// [`theta`] without range checks, in constant time.
///
/// Above the lowest bit `m` at which `p`, `q` or `p ^ q` runs out, every
/// level flips the sign exactly when the two index bits differ. The step at
/// `m` is taken explicitly and leaves either a finished reduction or two equal
/// indices, whose sign is fixed by their popcount.
#[inline]
pub fn theta_unchecked(_level: u32, p: u64, q: u64) -> Sign {
    if p == 0 || q == 0 {
        return Sign::Plus;
    }
    if p == q {
        return parity_sign(p.count_ones() - 1);
    }
    let d = p ^ q;
    let m = p.trailing_zeros().max(q.trailing_zeros()).max(d.trailing_zeros());
    let mut flips = d.checked_shr(m + 1).unwrap_or(0).count_ones();
    let mask = u64::MAX >> (63 - m);
    let (np, nq, flip, stop) = reduce(p & mask, q & mask, 1 << m);
    flips += flip as u32;
    if !stop && np != 0 && np == nq {
        flips += np.count_ones() - 1;
    }
    parity_sign(flips)
}

fn parity_sign(flips: u32) -> Sign {
    if flips % 2 == 1 {
        Sign::Minus
    } else {
        Sign::Plus
    }
}

/// One reduction step at the level with half-width `h`:
/// `(p', q', sign flips, reduction ends)`.
fn reduce(p: u64, q: u64, h: u64) -> (u64, u64, bool, bool) {
    match (p >= h, q >= h) {
        (false, false) => (p, q, false, false),
        (false, true) => {
            let r = q - h;
            if r == 0 {
                (p, 0, false, true)
            } else if r == p {
                (p, p, false, false)
            } else {
                (p, r, true, false)
            }
        }
        // covers r == q as well: -theta(r, r)
        (true, false) => (p - h, q, true, false),
        (true, true) => {
            let (r, s) = (p - h, q - h);
            if r == s {
                (r, r, r != 0, r == 0)
            } else if r == 0 {
                (0, s, true, true)
            } else if s == 0 {
                (r, 0, false, true)
            } else {
                (r, s, false, false)
            }
        }
    }
}

/// One link `sign * theta_level(p, q)` of a sign computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ThetaStep {
    pub sign: Sign,
    pub level: u32,
    pub p: u64,
    pub q: u64,
}

/// The full reduction `theta_t(p, q) = ± theta_{t-1}(..) = ... = ±1`,
/// including the levels where both indices lie in the lower half.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaChain {
    pub steps: Vec<ThetaStep>,
    pub value: Sign,
}

impl fmt::Display for ThetaChain {
    /// `theta3(3,5) = -theta2(3,1) = +theta1(1,1) = +1`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, s) in self.steps.iter().enumerate() {
            if k == 0 {
                write!(f, "theta{}({},{})", s.level, s.p, s.q)?;
            } else {
                write!(f, " = {}theta{}({},{})", s.sign.symbol(), s.level, s.p, s.q)?;
            }
        }
        write!(f, " = {}1", self.value.symbol())
    }
}

/// [`theta`] with every intermediate step recorded.
pub fn theta_chain(level: u32, p: u64, q: u64) -> Result<ThetaChain> {
    check_index(level, p)?;
    check_index(level, q)?;
    let (mut level, mut p, mut q) = (level, p, q);
    let mut sign = Sign::Plus;
    let mut steps = vec![ThetaStep { sign, level, p, q }];
    let mut terminal = None;
    while level > 1 && p != 0 && q != 0 {
        let h = 1u64 << (level - 1);
        let (np, nq, flip, stop) = reduce(p, q, h);
        if flip {
            sign = -sign;
        }
        level -= 1;
        p = np;
        q = nq;
        steps.push(ThetaStep { sign, level, p, q });
        if stop {
            terminal = Some(sign);
            break;
        }
    }
    let value = terminal.unwrap_or(sign);
    Ok(ThetaChain { steps, value })
}

/// `f_p f_q` in `E_t`.
pub fn basis_product(level: u32, p: u64, q: u64) -> Result<TwistTerm> {
    check_index(level, p)?;
    check_index(level, q)?;
    Ok(basis_product_unchecked(level, p, q))
}

#[inline]
pub fn basis_product_unchecked(level: u32, p: u64, q: u64) -> TwistTerm {
    TwistTerm { sign: theta_unchecked(level, p, q), gamma_mask: p & q, index: p ^ q }
}

/// Value of the twist map `alpha_t(p, q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Alpha {
    Symbolic(SparsePoly),
    Concrete(Rational),
}

impl fmt::Display for Alpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Alpha::Symbolic(p) => write!(f, "{p}"),
            Alpha::Concrete(r) => write!(f, "{r}"),
        }
    }
}

/// `alpha_t(p, q)`, symbolic in `g1..gt` or evaluated at `gammas`.
pub fn alpha_eval(level: u32, p: u64, q: u64, gammas: Option<&[Rational]>) -> Result<Alpha> {
    let term = basis_product(level, p, q)?;
    match gammas {
        None => Ok(Alpha::Symbolic(term.coefficient())),
        Some(g) => {
            if g.len() != level as usize {
                return Err(Error::InvalidParameter(format!(
                    "expected {level} parameter values, got {}",
                    g.len()
                )));
            }
            Ok(Alpha::Concrete(term.evaluate(g)?))
        }
    }
}

/// `alpha_t(p, q)` as `(sign, gamma mask)` computed by the level-by-level
/// case analysis of the doubling step, tracking which parameter each level
/// contributes instead of reading the mask off `p AND q`.
pub fn alpha_by_cases(level: u32, p: u64, q: u64) -> Result<(Sign, u64)> {
    check_index(level, p)?;
    check_index(level, q)?;
    Ok(alpha_cases(level, p, q))
}

fn alpha_cases(level: u32, p: u64, q: u64) -> (Sign, u64) {
    if level == 0 {
        return (Sign::Plus, 0);
    }
    let t = level - 1;
    let h = 1u64 << t;
    let g_next = 1u64 << t;
    match (p >= h, q >= h) {
        (false, false) => alpha_cases(t, p, q),
        (false, true) => {
            let r = q - h;
            if r == 0 || p == 0 {
                (Sign::Plus, 0)
            } else if r == p {
                alpha_cases(t, p, p)
            } else {
                let (s, m) = alpha_cases(t, p, r);
                (-s, m)
            }
        }
        (true, false) => {
            let r = p - h;
            if q == 0 {
                (Sign::Plus, 0)
            } else {
                let (s, m) = alpha_cases(t, r, q);
                (-s, m)
            }
        }
        (true, true) => {
            let (r, s) = (p - h, q - h);
            if r == 0 && s == 0 {
                (Sign::Plus, g_next)
            } else if r == s {
                let (sg, m) = alpha_cases(t, r, r);
                (-sg, m | g_next)
            } else if r == 0 {
                (Sign::Minus, g_next)
            } else if s == 0 {
                (Sign::Plus, g_next)
            } else {
                let (sg, m) = alpha_cases(t, r, s);
                (sg, m | g_next)
            }
        }
    }
}

/// Precomputed sign table for small levels (`4^t` entries).
#[derive(Clone, Debug)]
pub struct ThetaTable {
    level: u32,
    signs: Vec<bool>,
}

impl ThetaTable {
    pub const MAX_LEVEL: u32 = 8;

    pub fn new(level: u32) -> Result<Self> {
        if level > Self::MAX_LEVEL {
            return Err(Error::InvalidParameter(format!(
                "theta tables are limited to level {}",
                Self::MAX_LEVEL
            )));
        }
        let n = 1u64 << level;
        let signs = (0..n * n)
            .map(|k| theta_unchecked(level, k / n, k % n) == Sign::Minus)
            .collect();
        Ok(Self { level, signs })
    }

    pub fn get(&self, p: u64, q: u64) -> Sign {
        let n = 1u64 << self.level;
        if self.signs[(p * n + q) as usize] {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }
}
