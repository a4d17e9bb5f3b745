//! Text form of symbols.
//!
//! ```text
//! symbol  := "radial:" profile | "weyl:" complex | "measure:[" atoms? "]"
//!          | "trans:" complex ":" symbol | "fn:" name
//! profile := "const:" num | "pow:" int | "ind:" num | "rat:" num "," num
//!          | "pw:" nums "|" nums "|" num | "samp:" nums "|" nums
//!          | "file:" path | "scale:" num ":" profile
//! atoms   := "(" num "," num "," num ")" (";" atom)*
//! complex := num | num ("+"|"-") num "i" | num "i"
//! ```
//! `U+2212` is accepted as a minus sign.

use std::path::Path;

use num_complex::Complex;

use super::{Atom, GeneralSymbol, RadialProfile, SignedAtomicMeasure, Symbol};
use crate::error::{FockError, Result};
use crate::scalar::Real;

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn error<X>(&self, message: impl Into<String>) -> Result<X> {
        Err(FockError::Parse { position: self.pos, message: message.into() })
    }

    fn eat(&mut self, lit: &str) -> bool {
        if self.rest().starts_with(lit) {
            self.pos += lit.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, lit: &str) -> Result<()> {
        if self.eat(lit) {
            Ok(())
        } else {
            self.error(format!("expected `{lit}`"))
        }
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn eat_sign(&mut self) -> Option<bool> {
        match self.peek() {
            Some('+') => {
                self.pos += 1;
                Some(false)
            }
            Some('-') => {
                self.pos += 1;
                Some(true)
            }
            Some('\u{2212}') => {
                self.pos += '\u{2212}'.len_utf8();
                Some(true)
            }
            _ => None,
        }
    }

    fn number<T: Real>(&mut self) -> Result<T> {
        let start = self.pos;
        let negative = self.eat_sign().unwrap_or(false);
        let body_start = self.pos;
        let bytes = self.src.as_bytes();
        let mut digits = 0;
        while self.pos < bytes.len() && (bytes[self.pos].is_ascii_digit() || bytes[self.pos] == b'.') {
            digits += usize::from(bytes[self.pos].is_ascii_digit());
            self.pos += 1;
        }
        if digits == 0 {
            self.pos = start;
            return self.error("expected a number");
        }
        if self.pos < bytes.len() && (bytes[self.pos] == b'e' || bytes[self.pos] == b'E') {
            let save = self.pos;
            self.pos += 1;
            if self.pos < bytes.len() && (bytes[self.pos] == b'+' || bytes[self.pos] == b'-') {
                self.pos += 1;
            }
            let exp_start = self.pos;
            while self.pos < bytes.len() && bytes[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if self.pos == exp_start {
                self.pos = save;
            }
        }
        match self.src[body_start..self.pos].parse::<f64>() {
            Ok(v) => Ok(T::of(if negative { -v } else { v })),
            Err(_) => {
                self.pos = start;
                self.error("malformed number")
            }
        }
    }

    fn list<T: Real>(&mut self) -> Result<Vec<T>> {
        let mut out = vec![self.number()?];
        while self.eat(",") {
            out.push(self.number()?);
        }
        Ok(out)
    }

    fn complex<T: Real>(&mut self) -> Result<Complex<T>> {
        let first = self.number::<T>()?;
        if self.eat("i") {
            return Ok(Complex::new(T::zero(), first));
        }
        match self.peek() {
            Some('+') | Some('-') | Some('\u{2212}') => {
                let second = self.number::<T>()?;
                self.expect("i")?;
                Ok(Complex::new(first, second))
            }
            _ => Ok(Complex::new(first, T::zero())),
        }
    }

    fn profile<T: Real>(&mut self) -> Result<RadialProfile<T>> {
        let at = self.pos;
        let wrap = |r: Result<RadialProfile<T>>| {
            r.map_err(|e| match e {
                FockError::InvalidParameter(m) => FockError::Parse { position: at, message: m },
                other => other,
            })
        };
        if self.eat("const:") {
            Ok(RadialProfile::Constant(self.number()?))
        } else if self.eat("pow:") {
            let k: T = self.number()?;
            if k < T::zero() || k.fract() != T::zero() {
                return Err(FockError::Parse { position: at, message: "power must be a nonnegative integer".into() });
            }
            wrap(RadialProfile::power(k.to_u32().unwrap_or(1)))
        } else if self.eat("ind:") {
            let r = self.number()?;
            wrap(RadialProfile::indicator(r))
        } else if self.eat("rat:") {
            let a = self.number()?;
            self.expect(",")?;
            let b = self.number()?;
            wrap(RadialProfile::rational(a, b))
        } else if self.eat("pw:") {
            let edges = self.list()?;
            self.expect("|")?;
            let values = self.list()?;
            self.expect("|")?;
            let tail = self.number()?;
            wrap(RadialProfile::piecewise(edges, values, tail))
        } else if self.eat("samp:") {
            let radii = self.list()?;
            self.expect("|")?;
            let values = self.list()?;
            wrap(RadialProfile::sampled(radii, values))
        } else if self.eat("file:") {
            let path = self.rest();
            self.pos = self.src.len();
            if path.is_empty() {
                return self.error("missing file path");
            }
            RadialProfile::sampled_from_csv(Path::new(path))
        } else if self.eat("scale:") {
            let factor = self.number()?;
            self.expect(":")?;
            Ok(RadialProfile::scaled(factor, self.profile()?))
        } else {
            self.error("unknown radial profile (const, pow, ind, rat, pw, samp, file, scale)")
        }
    }

    fn symbol<T: Real>(&mut self) -> Result<Symbol<T>> {
        if self.eat("radial:") {
            Ok(Symbol::Radial(self.profile()?))
        } else if self.eat("weyl:") {
            Ok(Symbol::WeylPhase(self.complex()?))
        } else if self.eat("trans:") {
            let shift = self.complex()?;
            self.expect(":")?;
            Ok(Symbol::Translated { base: Box::new(self.symbol()?), shift })
        } else if self.eat("measure:") {
            let at = self.pos;
            self.expect("[")?;
            let mut atoms = Vec::new();
            if !self.eat("]") {
                loop {
                    self.expect("(")?;
                    let re = self.number()?;
                    self.expect(",")?;
                    let im = self.number()?;
                    self.expect(",")?;
                    let weight = self.number()?;
                    self.expect(")")?;
                    atoms.push(Atom { position: Complex::new(re, im), weight });
                    if self.eat("]") {
                        break;
                    }
                    self.expect(";")?;
                }
            }
            SignedAtomicMeasure::new(atoms)
                .map(Symbol::AtomicMeasure)
                .map_err(|e| FockError::Parse { position: at, message: e.to_string() })
        } else if self.eat("fn:") {
            let name = self.rest();
            match GeneralSymbol::named(name) {
                Some(g) => {
                    self.pos = self.src.len();
                    Ok(Symbol::General(g))
                }
                None => self.error(format!("unknown function symbol `{name}`")),
            }
        } else {
            self.error("unknown symbol kind (radial, weyl, measure, trans, fn)")
        }
    }
}

/// Parses the symbol mini-language; errors carry the byte offset.
pub fn parse_symbol<T: Real>(spec: &str) -> Result<Symbol<T>> {
    let mut cursor = Cursor { src: spec.trim(), pos: 0 };
    let symbol = cursor.symbol()?;
    if cursor.pos != cursor.src.len() {
        return cursor.error("trailing input");
    }
    Ok(symbol)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let s: Symbol<f64> = parse_symbol("radial:const:0.5").unwrap();
        assert!(matches!(s, Symbol::Radial(RadialProfile::Constant(c)) if c == 0.5));

        let s: Symbol<f64> = parse_symbol("weyl:1.0+0.5i").unwrap();
        assert!(matches!(s, Symbol::WeylPhase(z) if z == Complex::new(1.0, 0.5)));

        let s: Symbol<f64> = parse_symbol("radial:pw:0,1,2|\u{2212}1,0.5|0").unwrap();
        match s {
            Symbol::Radial(RadialProfile::PiecewiseConstant { edges, values, tail }) => {
                assert_eq!(edges, vec![0.0, 1.0, 2.0]);
                assert_eq!(values, vec![-1.0, 0.5]);
                assert_eq!(tail, 0.0);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn complex_forms() {
        for (text, z) in [
            ("weyl:2", Complex::new(2.0, 0.0)),
            ("weyl:-3i", Complex::new(0.0, -3.0)),
            ("weyl:1e-3-2.5i", Complex::new(1e-3, -2.5)),
            ("weyl:0+0i", Complex::new(0.0, 0.0)),
        ] {
            match parse_symbol::<f64>(text).unwrap() {
                Symbol::WeylPhase(w) => assert_eq!(w, z, "{text}"),
                other => panic!("{other:?}"),
            }
        }
    }

    #[test]
    fn measure_and_translation() {
        let s: Symbol<f64> = parse_symbol("trans:1-1i:measure:[(0,0,1);(1,0,-2)]").unwrap();
        let Symbol::Translated { base, shift } = s else { panic!() };
        assert_eq!(shift, Complex::new(1.0, -1.0));
        let Symbol::AtomicMeasure(m) = *base else { panic!() };
        assert_eq!(m.atoms().len(), 2);
        assert!(parse_symbol::<f64>("measure:[]").is_ok());
    }

    #[test]
    fn errors_carry_positions() {
        let err = parse_symbol::<f64>("radial:rat:1,x").unwrap_err();
        assert_eq!(err, FockError::Parse { position: 13, message: "expected a number".into() });
        let err = parse_symbol::<f64>("weyl:1+2").unwrap_err();
        assert!(matches!(err, FockError::Parse { position: 8, .. }));
        let err = parse_symbol::<f64>("radial:const:1 junk").unwrap_err();
        assert!(matches!(err, FockError::Parse { position: 14, .. }));
        assert!(matches!(parse_symbol::<f64>("nope:1"), Err(FockError::Parse { position: 0, .. })));
        assert!(matches!(parse_symbol::<f64>("radial:rat:1,-1"), Err(FockError::Parse { position: 7, .. })));
        assert!(parse_symbol::<f64>("fn:unknown").is_err());
    }

    #[test]
    fn print_parse_catalog() {
        for text in [
            "radial:const:0.5",
            "radial:pow:2",
            "radial:ind:1",
            "radial:pw:0,1,2|-1,0.5|0",
            "radial:rat:5,1",
            "radial:samp:0,1.5|1,-0.25",
            "radial:scale:-1:rat:5,1",
            "weyl:1+0.5i",
            "weyl:-2-0.125i",
            "measure:[(0,0,1);(1,0,-2)]",
            "trans:0.5-1i:fn:dir",
            "fn:absdir",
        ] {
            let s: Symbol<f64> = parse_symbol(text).unwrap();
            assert_eq!(s.to_string(), text);
        }
    }
}
