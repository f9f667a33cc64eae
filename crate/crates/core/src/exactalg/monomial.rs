//! Dense exponent vectors and monomial orders.

use std::cmp::Ordering;
use std::fmt;

use super::AlgebraError;

/// Hard cap on the number of variables: z1..z4 plus up to two auxiliaries.
pub const MAX_VARS: usize = 6;

/// A monomial `z1^e1 * ... * z6^e6`. Unused trailing slots are zero.
///
/// The `Ord` impl is graded reverse lexicographic with `z1 > z2 > ... > z6`, which is the
/// storage and printing order for every polynomial in the crate.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: [u16; MAX_VARS],
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(i: usize) -> Result<Self, AlgebraError> {
        if i >= MAX_VARS {
            return Err(AlgebraError::VariableOutOfRange { index: i, nvars: MAX_VARS });
        }
        let mut m = Monomial::one();
        m.exps[i] = 1;
        Ok(m)
    }

    pub fn from_exponents(exps: &[u32]) -> Result<Self, AlgebraError> {
        if exps.len() > MAX_VARS {
            return Err(AlgebraError::TooManyVariables(exps.len()));
        }
        let mut m = Monomial::one();
        for (slot, &e) in m.exps.iter_mut().zip(exps) {
            *slot = u16::try_from(e).map_err(|_| AlgebraError::ExponentOverflow)?;
        }
        Ok(m)
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.exps.get(i).copied().unwrap_or(0) as u32
    }

    pub fn exponents(&self) -> &[u16; MAX_VARS] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    /// Index of the highest variable with a nonzero exponent, plus one.
    pub fn support_len(&self) -> usize {
        self.exps.iter().rposition(|&e| e != 0).map_or(0, |p| p + 1)
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn checked_mul(&self, other: &Monomial) -> Result<Monomial, AlgebraError> {
        let mut out = *self;
        for (a, b) in out.exps.iter_mut().zip(other.exps.iter()) {
            *a = a.checked_add(*b).ok_or(AlgebraError::ExponentOverflow)?;
        }
        Ok(out)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `self / other` when `other` divides `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = *self;
        for (a, b) in out.exps.iter_mut().zip(other.exps.iter()) {
            *a = a.checked_sub(*b)?;
        }
        Some(out)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for (a, b) in out.exps.iter_mut().zip(other.exps.iter()) {
            *a = (*a).max(*b);
        }
        out
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for (a, b) in out.exps.iter_mut().zip(other.exps.iter()) {
            *a = (*a).min(*b);
        }
        out
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Lower the exponent of variable `i` by one, returning the old exponent.
    pub(crate) fn differentiate(&self, i: usize) -> Option<(u32, Monomial)> {
        let e = *self.exps.get(i)?;
        if e == 0 {
            return None;
        }
        let mut out = *self;
        out.exps[i] -= 1;
        Some((e as u32, out))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        MonomialOrder::DegRevLex.compare(self, other)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "z{}", i + 1)?;
            } else {
                write!(f, "z{}^{}", i + 1, e)?;
            }
        }
        Ok(())
    }
}

/// Monomial order tag. Storage always uses `DegRevLex`; Gröbner computations may use either.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MonomialOrder {
    /// Graded reverse lexicographic, `z1 > z2 > ...`, auxiliaries last.
    #[default]
    DegRevLex,
    /// Pure lexicographic, `z1 > z2 > ...`.
    Lex,
}

impl MonomialOrder {
    pub fn compare(self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::DegRevLex => {
                match a.degree().cmp(&b.degree()) {
                    Ordering::Equal => {}
                    ord => return ord,
                }
                for i in (0..MAX_VARS).rev() {
                    match a.exps[i].cmp(&b.exps[i]) {
                        Ordering::Equal => continue,
                        // A smaller exponent in the last differing variable wins.
                        ord => return ord.reverse(),
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::Lex => a.exps.cmp(&b.exps),
        }
    }
}
