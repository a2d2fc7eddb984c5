//! Bundle expression language.
//!
//! ```text
//! input    := expr '@' space
//! expr     := term ('+' term)*
//! term     := postfix ('*' INT)*
//! postfix  := primary ('^*')*
//! primary  := '(' expr ')' | ctor '[' expr ';' expr ']' | atom
//! ctor     := 'ext' | 'ker' | 'coker'
//! atom     := 'O' tw? | 'S' tw? | 'Q' tw? | 'E' tw? | 'L' '^' INT
//!           | 'Sym' '^' INT ('S'|'E') tw? | 'wedge' '^' INT ('S'|'E') tw?
//!           | 'Sigma' tw | 'Omega1P4' tw? | 'irr' '(' INT (',' INT)* ')'
//! tw       := '(' INT ')'
//! ```

use std::fmt;

use super::class::{BundleClass, IrredClass};
use super::object::{omega_p4, sigma, Construction, ExtensionObject, Object};
use super::space::Space;
use crate::error::{Error, Result};

/// A parsed expression: a formal direct sum of objects on one space.
/// Homogeneous summands are merged into a single class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expr {
    pub space: Space,
    pub parts: Vec<Object>,
}

impl Expr {
    fn from_object(o: Object) -> Self {
        Expr { space: o.space(), parts: vec![o] }.normalized()
    }

    fn normalized(self) -> Self {
        let mut bundle = BundleClass::zero(self.space);
        let mut derived = Vec::new();
        for p in self.parts {
            match p {
                Object::Bundle(b) => bundle = bundle.add(&b).expect("same space"),
                other => derived.push(other),
            }
        }
        let mut parts = Vec::new();
        if !bundle.is_zero() || derived.is_empty() {
            parts.push(Object::Bundle(bundle));
        }
        parts.extend(derived);
        Expr { space: self.space, parts }
    }

    /// The expression as a single object, when it is one.
    pub fn into_object(self) -> Result<Object> {
        let space = self.space;
        let mut parts = self.parts;
        if parts.len() == 1 {
            Ok(parts.pop().unwrap())
        } else {
            Err(Error::Unsupported(format!(
                "a sum of {} non-homogeneous parts on {space} is not a single object",
                parts.len()
            )))
        }
    }

    /// Indecomposable summands, with homogeneous terms split into irreducibles.
    pub fn summands(&self) -> Vec<Object> {
        let mut out = Vec::new();
        for p in &self.parts {
            match p {
                Object::Bundle(b) => {
                    for (irr, m) in b.irreducibles() {
                        for _ in 0..m {
                            out.push(Object::Bundle(BundleClass::irreducible(b.space, irr.levi_weight.clone())));
                        }
                    }
                }
                other => out.push(other.clone()),
            }
        }
        out
    }

    pub fn bundle(&self) -> Option<&BundleClass> {
        match self.parts.as_slice() {
            [Object::Bundle(b)] => Some(b),
            _ => None,
        }
    }

    fn dual(self) -> Self {
        Expr { space: self.space, parts: self.parts.iter().map(Object::dual).collect() }.normalized()
    }

    fn repeat(self, n: u64) -> Self {
        let mut parts = Vec::new();
        for p in &self.parts {
            match p {
                Object::Bundle(b) => parts.push(Object::Bundle(b.scale(n))),
                other => parts.extend(std::iter::repeat_n(other.clone(), n as usize)),
            }
        }
        Expr { space: self.space, parts }.normalized()
    }

    fn plus(self, other: Expr) -> Self {
        let mut parts = self.parts;
        parts.extend(other.parts);
        Expr { space: self.space, parts }.normalized()
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{} @{}", body.join(" + "), self.space)
    }
}

/// Parse `expr @space`.
pub fn parse_bundle_expr(text: &str) -> Result<Expr> {
    let at = top_level_at(text).ok_or(Error::Parse { pos: text.len(), msg: "missing `@space` suffix".into() })?;
    let space: Space = text[at + 1..].trim().parse()?;
    parse_on(&text[..at], space)
}

/// Parse an expression on a known space; an `@space` suffix, when present,
/// must agree with it.
pub fn parse_on(text: &str, space: Space) -> Result<Expr> {
    if let Some(at) = top_level_at(text) {
        let named: Space = text[at + 1..].trim().parse()?;
        if named != space {
            return Err(Error::SpaceMismatch(named, space));
        }
        return parse_on(&text[..at], space);
    }
    let mut p = Parser { src: text.as_bytes(), pos: 0, space };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(e)
}

fn top_level_at(text: &str) -> Option<usize> {
    text.rfind('@')
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    space: Space,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected `{}`", c as char)))
        }
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.src.get(self.pos), Some(b'-') | Some(b'+')) {
            self.pos += 1;
        }
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or("");
        s.parse().map_err(|_| Error::Parse { pos: start, msg: "expected an integer".into() })
    }

    fn ident(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut acc = self.term()?;
        while self.eat(b'+') {
            let rhs = self.term()?;
            acc = acc.plus(rhs);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Expr> {
        let mut e = self.postfix()?;
        while self.eat(b'*') {
            let at = self.pos;
            let n = self.int()?;
            if n < 0 {
                return Err(Error::Parse { pos: at, msg: "multiplicity must be non-negative".into() });
            }
            e = e.repeat(n as u64);
        }
        Ok(e)
    }

    fn postfix(&mut self) -> Result<Expr> {
        let mut e = self.primary()?;
        loop {
            self.skip_ws();
            if self.src[self.pos..].starts_with(b"^*") {
                self.pos += 2;
                e = e.dual();
            } else {
                return Ok(e);
            }
        }
    }

    fn twist(&mut self) -> Result<i64> {
        if self.peek() == Some(b'(') {
            self.pos += 1;
            let k = self.int()?;
            self.expect(b')')?;
            Ok(k)
        } else {
            Ok(0)
        }
    }

    fn single(&mut self) -> Result<Object> {
        let at = self.pos;
        let e = self.expr()?;
        e.into_object().map_err(|_| Error::Parse { pos: at, msg: "expected a single object".into() })
    }

    fn unit(&mut self) -> Result<(BundleClass, u64)> {
        let at = self.pos;
        let e = self.expr()?;
        let err = || Error::Parse { pos: at, msg: "expected a multiple of one irreducible bundle".into() };
        let b = e.bundle().ok_or_else(err)?;
        if b.terms.len() != 1 {
            return Err(err());
        }
        let (w, m) = b.terms.iter().next().unwrap();
        Ok((BundleClass::irreducible(self.space, w.clone()), *m))
    }

    fn primary(&mut self) -> Result<Expr> {
        match self.peek() {
            None => return Err(self.error("unexpected end of input")),
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                return Ok(e);
            }
            _ => {}
        }
        let start = self.pos;
        let name = self.ident();
        if name.is_empty() {
            return Err(self.error("expected an atom"));
        }
        let sp = self.space;
        let unknown = || Error::UnknownAtom { atom: name.clone(), space: sp };
        let bundle = |w: Vec<i64>| -> Result<Expr> {
            let irr = IrredClass::new(sp.compact(), w).map_err(|e| Error::Parse { pos: start, msg: e.to_string() })?;
            Ok(Expr::from_object(BundleClass::irreducible(sp, irr.levi_weight).into()))
        };
        let lgr_like = matches!(sp.compact(), Space::LGr | Space::Gr24);
        let psp_like = sp.compact() == Space::PSp;
        match name.as_str() {
            "ext" | "ker" | "coker" => {
                self.expect(b'[')?;
                let obj = match name.as_str() {
                    "ext" => {
                        let a = self.single()?;
                        self.expect(b';')?;
                        let b = self.single()?;
                        let label = format!("ext[{a}; {b}]");
                        ExtensionObject::extension(a, b, true, &label)?
                    }
                    "ker" => {
                        let (u, n) = self.unit()?;
                        self.expect(b';')?;
                        let b = self.single()?;
                        let label = format!("ker[{}; {b}]", u.scale(n));
                        ExtensionObject::evaluation_kernel(u, n, b, &label)?
                    }
                    _ => {
                        let a = self.single()?;
                        self.expect(b';')?;
                        let (u, n) = self.unit()?;
                        let label = format!("coker[{a}; {}]", u.scale(n));
                        ExtensionObject::coevaluation_cokernel(a, u, n, &label)?
                    }
                };
                self.expect(b']')?;
                Ok(Expr::from_object(obj.into()))
            }
            "O" => {
                let k = self.twist()?;
                bundle(sp.line_weight(k))
            }
            "L" => {
                self.expect(b'^')?;
                let k = self.int()?;
                bundle(sp.line_weight(-k))
            }
            "S" if lgr_like => {
                let k = self.twist()?;
                bundle(std_weight(sp, k, 1))
            }
            "Q" if sp.compact() == Space::Gr24 => {
                let k = self.twist()?;
                bundle(vec![k, k, 0, -1])
            }
            "E" if psp_like => {
                let k = self.twist()?;
                bundle(vec![k, 1])
            }
            "Sym" | "wedge" => {
                self.expect(b'^')?;
                let at = self.pos;
                let m = self.int()?;
                if m < 0 {
                    return Err(Error::Parse { pos: at, msg: "exponent must be non-negative".into() });
                }
                let letter = self.ident();
                let k = self.twist()?;
                let base = match letter.as_str() {
                    "S" if lgr_like => std_weight(sp, 0, 1),
                    "E" if psp_like => vec![0, 1],
                    _ => return Err(Error::UnknownAtom { atom: format!("{name}^{m} {letter}"), space: sp }),
                };
                let base = BundleClass::irreducible(sp, base);
                let powered = if name == "Sym" {
                    match letter.as_str() {
                        "S" => BundleClass::irreducible(sp, std_weight(sp, 0, m)),
                        _ => BundleClass::irreducible(sp, vec![0, m]),
                    }
                } else {
                    base.wedge_power(m as u64)?
                };
                Ok(Expr::from_object(powered.twist(k).into()))
            }
            "Sigma" if sp == Space::YPrime => {
                let k = self.twist()?;
                Ok(Expr::from_object(sigma(k)))
            }
            "Omega1P4" if sp.compact() == Space::LGr => {
                let k = self.twist()?;
                Ok(Expr::from_object(omega_p4(sp, k)?))
            }
            "irr" => {
                self.expect(b'(')?;
                let mut w = vec![self.int()?];
                while self.eat(b',') {
                    w.push(self.int()?);
                }
                self.expect(b')')?;
                bundle(w)
            }
            _ => Err(unknown()),
        }
    }
}

/// Weight of Sym^m S (k) on LGr or Gr24.
fn std_weight(sp: Space, k: i64, m: i64) -> Vec<i64> {
    match sp.compact() {
        Space::Gr24 => vec![k, k - m, 0, 0],
        _ => vec![k, k - m],
    }
}

/// Equality of constructions ignoring labels, used by round-trip checks.
pub fn same_object(a: &Object, b: &Object) -> bool {
    match (a, b) {
        (Object::Bundle(x), Object::Bundle(y)) => x == y,
        (Object::Derived(x), Object::Derived(y)) => {
            x.space == y.space
                && match (&x.construction, &y.construction) {
                    (
                        Construction::Extension { sub: s1, quotient: q1, generator: g1 },
                        Construction::Extension { sub: s2, quotient: q2, generator: g2 },
                    ) => g1 == g2 && same_object(s1, s2) && same_object(q1, q2),
                    (
                        Construction::Kernel { unit: u1, copies: c1, target: t1 },
                        Construction::Kernel { unit: u2, copies: c2, target: t2 },
                    ) => u1 == u2 && c1 == c2 && same_object(t1, t2),
                    (
                        Construction::Cokernel { source: s1, unit: u1, copies: c1 },
                        Construction::Cokernel { source: s2, unit: u2, copies: c2 },
                    ) => u1 == u2 && c1 == c2 && same_object(s1, s2),
                    _ => false,
                }
        }
        _ => false,
    }
}

pub fn same_expr(a: &Expr, b: &Expr) -> bool {
    a.space == b.space && a.parts.len() == b.parts.len() && a.parts.iter().zip(&b.parts).all(|(x, y)| same_object(x, y))
}
