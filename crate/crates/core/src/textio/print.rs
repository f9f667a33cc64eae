//! Canonical printing. Output parses back to the same value.

use std::fmt::{self, Write};

use crate::exactalg::{Monomial, Polynomial};
use crate::forms::{OneForm, ThreeForm, TwoForm};
use crate::ideals::{GroebnerBasis, Ideal};

fn write_monomial(out: &mut impl Write, m: &Monomial) -> fmt::Result {
    let mut first = true;
    for (i, &e) in m.exponents().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            out.write_char('*')?;
        }
        first = false;
        write!(out, "z{}", i + 1)?;
        if e > 1 {
            write!(out, "^{e}")?;
        }
    }
    Ok(())
}

fn write_polynomial(out: &mut impl Write, p: &Polynomial) -> fmt::Result {
    if p.is_zero() {
        return out.write_char('0');
    }
    for (k, (m, c)) in p.terms().enumerate() {
        let negative = c.is_negative();
        match (k, negative) {
            (0, true) => out.write_char('-')?,
            (0, false) => {}
            (_, true) => out.write_str(" - ")?,
            (_, false) => out.write_str(" + ")?,
        }
        let a = c.abs();
        if m.is_one() {
            write!(out, "{a}")?;
        } else {
            if !a.is_one() {
                write!(out, "{a}*")?;
            }
            write_monomial(out, m)?;
        }
    }
    Ok(())
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_polynomial(f, self)
    }
}

impl fmt::Display for OneForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coefficients().iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({c})*dz{}", i + 1)?;
        }
        if first {
            f.write_char('0')?;
        }
        Ok(())
    }
}

/// Wedge products print with `∧`; two- and three-forms are output only.
impl fmt::Display for TwoForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for ((i, j), c) in self.coefficients() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({c})*dz{}∧dz{}", i + 1, j + 1)?;
        }
        if first {
            f.write_char('0')?;
        }
        Ok(())
    }
}

impl fmt::Display for ThreeForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for ((i, j, k), c) in self.coefficients() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({c})*dz{}∧dz{}∧dz{}", i + 1, j + 1, k + 1)?;
        }
        if first {
            f.write_char('0')?;
        }
        Ok(())
    }
}

fn write_generators(f: &mut fmt::Formatter<'_>, gens: &[Polynomial]) -> fmt::Result {
    f.write_str("ideal(")?;
    if gens.is_empty() {
        f.write_char('0')?;
    }
    for (k, g) in gens.iter().enumerate() {
        if k > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{g}")?;
    }
    f.write_char(')')
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_generators(f, self.generators())
    }
}

impl fmt::Display for GroebnerBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_generators(f, &self.polynomials())
    }
}

/// Canonical text of a polynomial, form, or ideal.
pub fn print_canonical(x: &dyn fmt::Display) -> String {
    x.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::test_support::{p4, z};
    use crate::exactalg::Scalar;

    #[test]
    fn omega3_canonical() {
        let w3 = OneForm::new(vec![
            p4(&[(-1, &[0, 1, 2, 0])]),
            p4(&[(2, &[1, 0, 2, 0])]),
            p4(&[(-1, &[1, 1, 1, 0])]),
            Polynomial::zero(4),
        ])
        .unwrap();
        assert_eq!(w3.to_string(), "(-z2*z3^2)*dz1 + (2*z1*z3^2)*dz2 + (-z1*z2*z3)*dz3");
    }

    #[test]
    fn small_cases() {
        assert_eq!(Polynomial::zero(4).to_string(), "0");
        assert_eq!(OneForm::zero(4).to_string(), "0");
        assert_eq!(Ideal::coordinate(4, &[0, 1]).unwrap().to_string(), "ideal(z1, z2)");
        let p = &z(1).scale(&Scalar::new(-1, 2).unwrap()) + &Polynomial::constant(4, Scalar::new(1, 3).unwrap());
        assert_eq!(p.to_string(), "-1/2*z1 + 1/3");
        assert_eq!((&z(2) - &z(1)).to_string(), "-z1 + z2");
    }

    #[test]
    fn wedge_printing() {
        use crate::forms::Wedge;
        let a = OneForm::basis(4, 0).unwrap();
        let b = OneForm::basis(4, 2).unwrap().mul_polynomial(&z(4)).unwrap();
        assert_eq!(a.wedge(&b).to_string(), "(z4)*dz1∧dz3");
    }
}
