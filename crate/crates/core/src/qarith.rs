//! Exact q-arithmetic at a fixed rational `q` in (0, 1).
//!
//! Every quantity here is an exact [`Rational`]: powers of `q` (including
//! negative ones), q-integers `[n]`, q-Pochhammer products, Gaussian binomials
//! and the binomial ratio `⟨n,k⟩/⟨n+k,k⟩` that weights every mollified sum.

use std::collections::HashMap;
use std::fmt;
use std::sync::RwLock;

use rug::ops::Pow;
use rug::{Integer, Rational};

use crate::error::{Error, Result};

#[derive(Default)]
struct Memo {
    /// `q^e` for `e = 0, 1, ...`.
    powers: Vec<Rational>,
    /// `[n]` for `n = 0, 1, ...`.
    q_ints: Vec<Rational>,
    /// `(q; q)_n` for `n = 0, 1, ...`.
    poch: Vec<Rational>,
    /// `[k]^{-w}` keyed by `(k, w)`.
    inv_q_int_pow: HashMap<(u64, u32), Rational>,
}

/// A fixed `q` plus memo tables.
///
/// The memo is behind a lock, so a context can be shared between threads;
/// filled entries never change, so results do not depend on interleaving.
pub struct QContext {
    q: Rational,
    memo: RwLock<Memo>,
}

impl fmt::Debug for QContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("QContext").field("q", &self.q).finish()
    }
}

impl Clone for QContext {
    fn clone(&self) -> Self {
        Self::new(self.q.clone()).expect("q already validated")
    }
}

impl QContext {
    pub fn new(q: Rational) -> Result<Self> {
        if q <= 0 || q >= 1 {
            return Err(Error::InvalidQ(q.to_string()));
        }
        let memo = Memo {
            powers: vec![Rational::from(1)],
            q_ints: vec![Rational::new()],
            poch: vec![Rational::from(1)],
            inv_q_int_pow: HashMap::new(),
        };
        Ok(Self {
            q,
            memo: RwLock::new(memo),
        })
    }

    /// Shorthand for `QContext::new(num/den)`.
    pub fn from_ratio(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::InvalidQ(format!("{num}/0")));
        }
        Self::new(Rational::from((num, den)))
    }

    pub fn q(&self) -> &Rational {
        &self.q
    }

    /// `q^e` for any integer `e`.
    pub fn pow(&self, e: i64) -> Rational {
        let idx = e.unsigned_abs() as usize;
        let p = {
            let memo = self.memo.read().unwrap();
            memo.powers.get(idx).cloned()
        };
        let p = p.unwrap_or_else(|| {
            let mut memo = self.memo.write().unwrap();
            while memo.powers.len() <= idx {
                let next = Rational::from(memo.powers.last().unwrap() * &self.q);
                memo.powers.push(next);
            }
            memo.powers[idx].clone()
        });
        if e < 0 {
            p.recip()
        } else {
            p
        }
    }

    /// The q-integer `[n] = (1 - q^n)/(1 - q)`, with `[0] = 0`.
    pub fn q_int(&self, n: u64) -> Rational {
        let idx = n as usize;
        loop {
            let len = {
                let memo = self.memo.read().unwrap();
                if let Some(v) = memo.q_ints.get(idx) {
                    return v.clone();
                }
                memo.q_ints.len()
            };
            // [k] = [k-1] + q^(k-1)
            let step = self.pow(len as i64 - 1);
            let mut memo = self.memo.write().unwrap();
            if memo.q_ints.len() == len {
                let v = Rational::from(&memo.q_ints[len - 1] + &step);
                memo.q_ints.push(v);
            }
        }
    }

    /// `[k]^{-w}` for `k >= 1`.
    pub fn inv_q_int_pow(&self, k: u64, w: u32) -> Rational {
        if w == 0 {
            return Rational::from(1);
        }
        if let Some(v) = self.memo.read().unwrap().inv_q_int_pow.get(&(k, w)) {
            return v.clone();
        }
        let base = self.q_int(k).recip();
        let v = Rational::from((&base).pow(w));
        self.memo
            .write()
            .unwrap()
            .inv_q_int_pow
            .insert((k, w), v.clone());
        v
    }

    /// `(q; q)_n = Π_{i=1}^{n} (1 - q^i)`.
    pub fn q_poch(&self, n: u64) -> Rational {
        let idx = n as usize;
        loop {
            let len = {
                let memo = self.memo.read().unwrap();
                if let Some(v) = memo.poch.get(idx) {
                    return v.clone();
                }
                memo.poch.len()
            };
            let factor = Rational::from(1) - self.pow(len as i64);
            let mut memo = self.memo.write().unwrap();
            if memo.poch.len() == len {
                let v = Rational::from(&memo.poch[len - 1] * &factor);
                memo.poch.push(v);
            }
        }
    }

    /// Gaussian binomial `[n over m]`, zero outside `0 <= m <= n`.
    pub fn gauss_binomial(&self, n: i64, m: i64) -> Rational {
        if m < 0 || n < 0 || m > n {
            return Rational::new();
        }
        let (n, m) = (n as u64, m as u64);
        let den = Rational::from(&self.q_poch(m) * &self.q_poch(n - m));
        self.q_poch(n) / den
    }

    /// `[n over k] / [n+k over k]`; zero when `k > n`.
    pub fn binom_ratio(&self, n: u64, k: u64) -> Rational {
        if k > n {
            return Rational::new();
        }
        if k == 0 {
            return Rational::from(1);
        }
        // (q)_n^2 / ((q)_{n-k} (q)_{n+k})
        let pn = self.q_poch(n);
        let num = Rational::from(&pn * &pn);
        let den = Rational::from(&self.q_poch(n - k) * &self.q_poch(n + k));
        num / den
    }

    /// `A_{n,k} = (-1)^k (1 + q^k) q^{k(k-1)/2} [n over k]/[n+k over k]`.
    pub fn a_kernel(&self, n: u64, k: u64) -> Rational {
        let ki = k as i64;
        let mut v = self.binom_ratio(n, k);
        if v == 0 {
            return v;
        }
        v *= Rational::from(1) + self.pow(ki);
        v *= self.pow(ki * (ki - 1) / 2);
        if k % 2 == 1 {
            v = -v;
        }
        v
    }
}

/// General q-Pochhammer `(a; q)_n = Π_{j=0}^{n-1} (1 - a q^j)`.
pub fn q_pochhammer(a: &Rational, n: u64, ctx: &QContext) -> Rational {
    let mut acc = Rational::from(1);
    for j in 0..n {
        acc *= Rational::from(1) - Rational::from(a * &ctx.pow(j as i64));
    }
    acc
}

/// Parses `p/q` or a plain integer into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational `{s}`"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: Integer = p.trim().parse().map_err(|_| bad())?;
            let q: Integer = q.trim().parse().map_err(|_| bad())?;
            if q == 0 {
                return Err(bad());
            }
            Ok(Rational::from((p, q)))
        }
        None => {
            let p: Integer = s.parse().map_err(|_| bad())?;
            Ok(Rational::from(p))
        }
    }
}

/// Parses a positive decimal tolerance such as `1e-25`, `0.001` or `1/1000`
/// into an exact rational.
pub fn parse_tolerance(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid tolerance `{s}`"));
    let v = if s.contains('/') {
        parse_rational(s)?
    } else {
        let (mant, exp) = match s.split_once(['e', 'E']) {
            Some((m, e)) => (m, e.parse::<i32>().map_err(|_| bad())?),
            None => (s, 0),
        };
        let (int_part, frac_part) = mant.split_once('.').unwrap_or((mant, ""));
        let digits = format!("{int_part}{frac_part}");
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let mantissa: Integer = digits.parse().map_err(|_| bad())?;
        let scale = exp - frac_part.len() as i32;
        let ten = Rational::from(10);
        Rational::from(mantissa) * Rational::from((&ten).pow(scale))
    };
    if v <= 0 {
        return Err(bad());
    }
    Ok(v)
}
