//! Concrete syntax for elements of `F_V(3)`.
//!
//! ```text
//! relation := term (("+" | "-") term)*
//! term     := [rational "*"] mono
//! mono     := "(" var "{" gen "}" var ")" "{" gen "}" var
//!           | var "{" gen "}" "(" var "{" gen "}" var ")"
//! var      := "x1" | "x2" | "x3"
//! rational := int ["/" posint]
//! ```
//!
//! Whitespace is insignificant. The literal `0` denotes the zero element.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::free3::{GeneratorSpace, Mono};
use crate::linalg::{parse_rational, Rational};
use crate::perm::PermS3;

pub fn parse_relation(text: &str, gens: &GeneratorSpace) -> Result<Vec<Rational>> {
    let mut p = Parser { chars: text.chars().filter(|c| !c.is_whitespace()).collect(), pos: 0, text };
    let mut out = vec![Rational::zero(); gens.free3_dim()];
    if p.chars == ['0'] {
        return Ok(out);
    }
    let mut first = true;
    while !p.at_end() {
        let mut sign = Rational::one();
        match p.peek() {
            Some('+') => {
                p.bump();
            }
            Some('-') => {
                p.bump();
                sign = -sign;
            }
            _ if !first => return Err(p.error("expected `+` or `-` between terms")),
            _ => {}
        }
        first = false;
        let coeff = p.coefficient()?;
        let mono = p.monomial(gens)?;
        let c = sign * coeff;
        for (idx, x) in mono {
            out[idx] += &c * x;
        }
    }
    if first {
        return Err(p.error("empty relation"));
    }
    Ok(out)
}

/// Render a vector as a sum of left-combed basis monomials.
pub fn pretty_print(v: &[Rational], gens: &GeneratorSpace) -> String {
    pretty_print_vars(v, gens, ["x1", "x2", "x3"])
}

/// Same as [`pretty_print`] with custom variable names for x1, x2, x3.
pub fn pretty_print_vars(v: &[Rational], gens: &GeneratorSpace, vars: [&str; 3]) -> String {
    let mut out = String::new();
    for (idx, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let a = c.abs();
        if !a.is_one() {
            out.push_str(&format!("{a}*"));
        }
        out.push_str(&format_mono(gens, gens.mono(idx), vars));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub fn format_mono(gens: &GeneratorSpace, m: Mono, vars: [&str; 3]) -> String {
    let [a, b, c] = m.sigma().images().map(|i| vars[(i - 1) as usize]);
    format!("({a} {{{}}} {b}) {{{}}} {c}", gens.name(m.inner), gens.name(m.outer))
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    text: &'a str,
}

impl Parser<'_> {
    fn at_end(&self) -> bool {
        self.pos >= self.chars.len()
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        self.pos += 1;
        c
    }

    fn error(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {} in `{}`", self.pos, self.text))
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.bump() == Some(c) {
            Ok(())
        } else {
            self.pos -= 1;
            Err(self.error(&format!("expected `{c}`")))
        }
    }

    fn coefficient(&mut self) -> Result<Rational> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit() || c == '/') {
            self.pos += 1;
        }
        if self.pos == start {
            return Ok(Rational::one());
        }
        let lit: String = self.chars[start..self.pos].iter().collect();
        let value = parse_rational(&lit)?;
        self.expect('*')?;
        Ok(value)
    }

    fn var(&mut self) -> Result<u8> {
        if self.bump() != Some('x') {
            self.pos -= 1;
            return Err(self.error("expected variable x1, x2 or x3"));
        }
        match self.bump() {
            Some(d @ '1'..='3') => Ok(d as u8 - b'0'),
            _ => {
                self.pos -= 1;
                Err(self.error("expected variable x1, x2 or x3"))
            }
        }
    }

    fn generator(&mut self, gens: &GeneratorSpace) -> Result<usize> {
        self.expect('{')?;
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c != '}') {
            self.pos += 1;
        }
        let name: String = self.chars[start..self.pos].iter().collect();
        self.expect('}')?;
        // names were compared with whitespace stripped
        gens.names()
            .iter()
            .position(|n| n.chars().filter(|c| !c.is_whitespace()).collect::<String>() == name)
            .ok_or(Error::UnknownGenerator(name))
    }

    /// Returns (coordinate, coefficient) pairs of the monomial.
    fn monomial(&mut self, gens: &GeneratorSpace) -> Result<Vec<(usize, Rational)>> {
        if self.peek() == Some('(') {
            self.bump();
            let a = self.var()?;
            let g = self.generator(gens)?;
            let b = self.var()?;
            self.expect(')')?;
            let h = self.generator(gens)?;
            let c = self.var()?;
            left_combed(gens, [a, b, c], h, g)
        } else {
            let c = self.var()?;
            let h = self.generator(gens)?;
            self.expect('(')?;
            let a = self.var()?;
            let g = self.generator(gens)?;
            let b = self.var()?;
            self.expect(')')?;
            // h(x_c, u) = ((12)h)(u, x_c)
            let mut out = Vec::new();
            for m in 0..gens.dim() {
                let s = &gens.swap()[(m, h)];
                if s.is_zero() {
                    continue;
                }
                for (idx, x) in left_combed(gens, [a, b, c], m, g)? {
                    out.push((idx, s * x));
                }
            }
            Ok(out)
        }
    }
}

/// `outer(inner(x_a, x_b), x_c)` = `pi·(id, outer, inner)` with `pi = (a, b, c)`.
fn left_combed(gens: &GeneratorSpace, vars: [u8; 3], outer: usize, inner: usize) -> Result<Vec<(usize, Rational)>> {
    let pi = match PermS3::new(vars) {
        Some(p) => p,
        None => {
            let dup = if vars[0] == vars[1] || vars[0] == vars[2] { vars[0] } else { vars[1] };
            return Err(Error::RepeatedVariable(dup));
        }
    };
    Ok(gens
        .act_mono(pi, Mono::new(PermS3::ID, outer, inner))
        .into_iter()
        .map(|(m, c)| (gens.index(m), c))
        .collect())
}
