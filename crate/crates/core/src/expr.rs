//! Expression language: AST, lexer, recursive-descent parser and canonical
//! rendering with `parse(render(e)) == e`.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' '-'? INT)?
//! atom   := NUMBER | 'i' | 'kappa' | 'box' | x0..x3 | P0..P3
//!         | tau[i] | Exp[l] | W[j] | f[i,j] | del[i] | e[i] | k[j,mu] | E[j]
//!         | wave(expr; expr, expr, expr) | star(expr) | d(expr)
//!         | wedge(expr, expr) | act(expr, expr) | '[' expr ',' expr ']' | '(' expr ')'
//! NUMBER := INT ('/' INT)? 'i'?
//! ```

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{KminkError, Location, Result};
use crate::metric::DIM;
use crate::random::Generator;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    /// Non-negative literal `num/den`, times `i` when `imag`.
    Number { num: BigInt, den: BigInt, imag: bool },
    ImagUnit,
    Kappa,
    Coord(usize),
    Momentum(usize),
    Tau(usize),
    Exp(i32),
    Wave(u32),
    WaveExplicit { time: Box<Expr>, spatial: Box<[Expr; 3]> },
    F(usize, usize),
    Del(usize),
    VectorField(usize),
    BoxOp,
    K(u32, usize),
    EVar(u32),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, i64),
    Commutator(Box<Expr>, Box<Expr>),
    Star(Box<Expr>),
    D(Box<Expr>),
    Wedge(Box<Expr>, Box<Expr>),
    Act(Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn int(n: u64) -> Expr {
        Expr::Number { num: BigInt::from(n), den: BigInt::one(), imag: false }
    }

    fn level(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) => 2,
            Expr::Neg(..) => 3,
            Expr::Pow(..) => 4,
            _ => 5,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.level() < min {
            write!(f, "(")?;
            self.write_at(f, 0)?;
            return write!(f, ")");
        }
        match self {
            Expr::Number { num, den, imag } => {
                write!(f, "{}", num)?;
                if !den.is_one() {
                    write!(f, "/{}", den)?;
                }
                if *imag {
                    write!(f, "i")?;
                }
                Ok(())
            }
            Expr::ImagUnit => write!(f, "i"),
            Expr::Kappa => write!(f, "kappa"),
            Expr::Coord(m) => write!(f, "x{}", m),
            Expr::Momentum(m) => write!(f, "P{}", m),
            Expr::Tau(i) => write!(f, "tau[{}]", i),
            Expr::Exp(l) => write!(f, "Exp[{}]", l),
            Expr::Wave(j) => write!(f, "W[{}]", j),
            Expr::WaveExplicit { time, spatial } => {
                write!(f, "wave({}; {}, {}, {})", time, spatial[0], spatial[1], spatial[2])
            }
            Expr::F(i, j) => write!(f, "f[{},{}]", i, j),
            Expr::Del(i) => write!(f, "del[{}]", i),
            Expr::VectorField(i) => write!(f, "e[{}]", i),
            Expr::BoxOp => write!(f, "box"),
            Expr::K(j, m) => write!(f, "k[{},{}]", j, m),
            Expr::EVar(j) => write!(f, "E[{}]", j),
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                a.write_at(f, 1)?;
                write!(f, "{}", if matches!(self, Expr::Add(..)) { " + " } else { " - " })?;
                b.write_at(f, 2)
            }
            Expr::Mul(a, b) => {
                a.write_at(f, 2)?;
                write!(f, " * ")?;
                b.write_at(f, 3)
            }
            Expr::Neg(a) => {
                write!(f, "-")?;
                a.write_at(f, 3)
            }
            Expr::Pow(a, n) => {
                a.write_at(f, 5)?;
                write!(f, "^{}", n)
            }
            Expr::Commutator(a, b) => write!(f, "[{}, {}]", a, b),
            Expr::Star(a) => write!(f, "star({})", a),
            Expr::D(a) => write!(f, "d({})", a),
            Expr::Wedge(a, b) => write!(f, "wedge({}, {})", a, b),
            Expr::Act(a, b) => write!(f, "act({}, {})", a, b),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Number { num: BigInt, den: BigInt, imag: bool },
    Ident(String),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Semi,
    Plus,
    Minus,
    Star,
    Caret,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Number { num, den, imag } => {
                write!(f, "number `{}", num)?;
                if !den.is_one() {
                    write!(f, "/{}", den)?;
                }
                write!(f, "{}`", if *imag { "i" } else { "" })
            }
            Tok::Ident(s) => write!(f, "`{}`", s),
            Tok::LParen => write!(f, "`(`"),
            Tok::RParen => write!(f, "`)`"),
            Tok::LBracket => write!(f, "`[`"),
            Tok::RBracket => write!(f, "`]`"),
            Tok::Comma => write!(f, "`,`"),
            Tok::Semi => write!(f, "`;`"),
            Tok::Plus => write!(f, "`+`"),
            Tok::Minus => write!(f, "`-`"),
            Tok::Star => write!(f, "`*`"),
            Tok::Caret => write!(f, "`^`"),
            Tok::End => write!(f, "end of input"),
        }
    }
}

fn syntax(at: Location, message: impl Into<String>) -> KminkError {
    KminkError::Syntax { at, message: message.into() }
}

fn lex(text: &str) -> Result<Vec<(Tok, Location)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut column) = (1, 1);
    let mut i = 0;
    let digits = |i: &mut usize, column: &mut usize| {
        let start = *i;
        while *i < chars.len() && chars[*i].is_ascii_digit() {
            *i += 1;
            *column += 1;
        }
        chars[start..*i].iter().collect::<String>().parse::<BigInt>().expect("ascii digits")
    };
    while i < chars.len() {
        let c = chars[i];
        let at = Location { line, column };
        if c == '\n' {
            line += 1;
            column = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            column += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let num = digits(&mut i, &mut column);
            let mut den = BigInt::one();
            if i + 1 < chars.len() && chars[i] == '/' && chars[i + 1].is_ascii_digit() {
                i += 1;
                column += 1;
                den = digits(&mut i, &mut column);
                if den.is_zero() {
                    return Err(syntax(at, "zero denominator"));
                }
            }
            let mut imag = false;
            if i < chars.len() && chars[i] == 'i' && !chars.get(i + 1).is_some_and(|c| c.is_alphanumeric() || *c == '_') {
                imag = true;
                i += 1;
                column += 1;
            }
            out.push((Tok::Number { num, den, imag }, at));
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
                column += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), at));
            continue;
        }
        let tok = match c {
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '[' => Tok::LBracket,
            ']' => Tok::RBracket,
            ',' => Tok::Comma,
            ';' => Tok::Semi,
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            other => return Err(syntax(at, format!("unexpected character `{}`", other))),
        };
        out.push((tok, at));
        i += 1;
        column += 1;
    }
    out.push((Tok::End, Location { line, column }));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Location)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn at(&self) -> Location {
        self.toks[self.pos].1
    }

    fn next(&mut self) -> (Tok, Location) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<()> {
        let (t, at) = self.next();
        if t == want {
            Ok(())
        } else {
            Err(syntax(at, format!("expected {}, found {}", want, t)))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.next();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.next();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::Star {
            self.next();
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        if *self.peek() == Tok::Minus {
            self.next();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.next();
        let (n, at) = self.signed_int()?;
        let n = n.to_i64().ok_or_else(|| syntax(at, "exponent too large"))?;
        Ok(Expr::Pow(Box::new(base), n))
    }

    fn signed_int(&mut self) -> Result<(BigInt, Location)> {
        let negative = *self.peek() == Tok::Minus;
        if negative {
            self.next();
        }
        match self.next() {
            (Tok::Number { num, den, imag: false }, at) if den.is_one() => Ok((if negative { -num } else { num }, at)),
            (t, at) => Err(syntax(at, format!("expected an integer, found {}", t))),
        }
    }

    fn index(&mut self, name: &str, range: std::ops::Range<i64>) -> Result<i64> {
        let (n, at) = self.signed_int()?;
        match n.to_i64() {
            Some(v) if range.contains(&v) => Ok(v),
            _ => Err(KminkError::IndexOutOfRange { name: name.to_string(), index: n.to_string(), at }),
        }
    }

    fn bracket1(&mut self, name: &str, range: std::ops::Range<i64>) -> Result<i64> {
        self.expect(Tok::LBracket)?;
        let v = self.index(name, range)?;
        self.expect(Tok::RBracket)?;
        Ok(v)
    }

    fn bracket2(&mut self, name: &str, r1: std::ops::Range<i64>, r2: std::ops::Range<i64>) -> Result<(i64, i64)> {
        self.expect(Tok::LBracket)?;
        let a = self.index(name, r1)?;
        self.expect(Tok::Comma)?;
        let b = self.index(name, r2)?;
        self.expect(Tok::RBracket)?;
        Ok((a, b))
    }

    fn call1(&mut self) -> Result<Box<Expr>> {
        self.expect(Tok::LParen)?;
        let a = self.expr()?;
        self.expect(Tok::RParen)?;
        Ok(Box::new(a))
    }

    fn call2(&mut self) -> Result<(Box<Expr>, Box<Expr>)> {
        self.expect(Tok::LParen)?;
        let a = self.expr()?;
        self.expect(Tok::Comma)?;
        let b = self.expr()?;
        self.expect(Tok::RParen)?;
        Ok((Box::new(a), Box::new(b)))
    }

    fn atom(&mut self) -> Result<Expr> {
        let (tok, at) = self.next();
        let dim = DIM as i64;
        let labels = 0..i64::from(u32::MAX);
        match tok {
            Tok::Number { num, den, imag } => Ok(Expr::Number { num, den, imag }),
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Tok::LBracket => {
                let a = self.expr()?;
                self.expect(Tok::Comma)?;
                let b = self.expr()?;
                self.expect(Tok::RBracket)?;
                Ok(Expr::Commutator(Box::new(a), Box::new(b)))
            }
            Tok::Ident(name) => match name.as_str() {
                "i" => Ok(Expr::ImagUnit),
                "kappa" => Ok(Expr::Kappa),
                "box" => Ok(Expr::BoxOp),
                "tau" => Ok(Expr::Tau(self.bracket1("tau", 0..dim)? as usize)),
                "Exp" => Ok(Expr::Exp(self.bracket1("Exp", i64::from(i32::MIN)..i64::from(i32::MAX))? as i32)),
                "W" => Ok(Expr::Wave(self.bracket1("W", labels)? as u32)),
                "E" => Ok(Expr::EVar(self.bracket1("E", labels)? as u32)),
                "del" => Ok(Expr::Del(self.bracket1("del", 0..dim)? as usize)),
                "e" => Ok(Expr::VectorField(self.bracket1("e", 0..dim)? as usize)),
                "f" => {
                    let (i, j) = self.bracket2("f", 0..dim, 0..dim)?;
                    Ok(Expr::F(i as usize, j as usize))
                }
                "k" => {
                    let (j, m) = self.bracket2("k", labels, 0..4)?;
                    Ok(Expr::K(j as u32, m as usize))
                }
                "star" => Ok(Expr::Star(self.call1()?)),
                "d" => Ok(Expr::D(self.call1()?)),
                "wedge" => {
                    let (a, b) = self.call2()?;
                    Ok(Expr::Wedge(a, b))
                }
                "act" => {
                    let (a, b) = self.call2()?;
                    Ok(Expr::Act(a, b))
                }
                "wave" => {
                    self.expect(Tok::LParen)?;
                    let time = self.expr()?;
                    self.expect(Tok::Semi)?;
                    let s1 = self.expr()?;
                    self.expect(Tok::Comma)?;
                    let s2 = self.expr()?;
                    self.expect(Tok::Comma)?;
                    let s3 = self.expr()?;
                    self.expect(Tok::RParen)?;
                    Ok(Expr::WaveExplicit { time: Box::new(time), spatial: Box::new([s1, s2, s3]) })
                }
                other => coordinate_like(other, at),
            },
            other => Err(syntax(at, format!("unexpected {}", other))),
        }
    }
}

/// `x0..x3` and `P0..P3`.
fn coordinate_like(name: &str, at: Location) -> Result<Expr> {
    let mut chars = name.chars();
    let head = chars.next();
    let rest: String = chars.collect();
    let digits = !rest.is_empty() && rest.chars().all(|c| c.is_ascii_digit());
    match head {
        Some(h @ ('x' | 'P')) if digits => {
            let stem = h.to_string();
            match rest.parse::<usize>() {
                Ok(m) if m < 4 => Ok(if h == 'x' { Expr::Coord(m) } else { Expr::Momentum(m) }),
                _ => Err(KminkError::IndexOutOfRange { name: stem, index: rest, at }),
            }
        }
        _ => Err(KminkError::UnknownSymbol { name: name.to_string(), at }),
    }
}

pub fn parse(text: &str) -> Result<Expr> {
    let mut p = Parser { toks: lex(text)?, pos: 0 };
    let e = p.expr()?;
    match p.peek() {
        Tok::End => Ok(e),
        t => Err(syntax(p.at(), format!("unexpected {} after expression", t))),
    }
}

/// Random syntax tree for round-trip testing; not type-correct in general.
pub fn random_expr(gen: &mut Generator, depth: u32) -> Expr {
    if depth == 0 || gen.chance(0.3) {
        return random_leaf(gen);
    }
    let sub = |gen: &mut Generator| Box::new(random_expr(gen, depth - 1));
    match gen.below(11) {
        0 => Expr::Add(sub(gen), sub(gen)),
        1 => Expr::Sub(sub(gen), sub(gen)),
        2 | 3 => Expr::Mul(sub(gen), sub(gen)),
        4 => Expr::Neg(sub(gen)),
        5 => Expr::Pow(sub(gen), gen.below(7) as i64 - 3),
        6 => Expr::Commutator(sub(gen), sub(gen)),
        7 => Expr::Star(sub(gen)),
        8 => Expr::D(sub(gen)),
        9 => {
            if gen.chance(0.5) {
                Expr::Wedge(sub(gen), sub(gen))
            } else {
                Expr::Act(sub(gen), sub(gen))
            }
        }
        _ => Expr::WaveExplicit { time: sub(gen), spatial: Box::new([*sub(gen), *sub(gen), *sub(gen)]) },
    }
}

fn random_leaf(gen: &mut Generator) -> Expr {
    match gen.below(14) {
        0 | 1 => Expr::Number {
            num: BigInt::from(gen.below(12)),
            den: BigInt::from(1 + gen.below(4)),
            imag: gen.chance(0.3),
        },
        2 => Expr::ImagUnit,
        3 => Expr::Kappa,
        4 => Expr::Coord(gen.below(4)),
        5 => Expr::Momentum(gen.below(4)),
        6 => Expr::Tau(gen.below(DIM)),
        7 => Expr::Exp(gen.below(5) as i32 - 2),
        8 => Expr::Wave(1 + gen.below(2) as u32),
        9 => Expr::F(gen.below(DIM), gen.below(DIM)),
        10 => Expr::Del(gen.below(DIM)),
        11 => Expr::VectorField(gen.below(DIM)),
        12 => {
            if gen.chance(0.5) {
                Expr::BoxOp
            } else {
                Expr::EVar(1 + gen.below(2) as u32)
            }
        }
        _ => Expr::K(1 + gen.below(2) as u32, gen.below(4)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn roundtrip(text: &str) -> Expr {
        let e = parse(text).unwrap_or_else(|err| panic!("{text}: {err}"));
        assert_eq!(parse(&e.to_string()).unwrap(), e, "{text} -> {e}");
        e
    }

    #[test]
    fn parses_examples() {
        let e = roundtrip("x0 * x1 - x1 * x0");
        assert!(matches!(e, Expr::Sub(..)));
        let e = roundtrip("act(del[0], x0^2)");
        assert!(matches!(e, Expr::Act(..)));
        roundtrip("(3/2 + 1i) * kappa^-2 * k[1,0]^2 * E[1]^-1");
        roundtrip("wave(k[1,0] + k[2,0]; k[1,1], 0, k[2,3] * E[1]^-1)");
        roundtrip("[x0, W[1]] + -2i * tau[4] * Exp[-1]");
        roundtrip("wedge(d(x0 * x1), tau[2])");
        roundtrip("-x0^2 - -(x1 * x2)");
    }

    #[test]
    fn precedence() {
        assert_eq!(parse("-x0^2").unwrap(), Expr::Neg(Box::new(Expr::Pow(Box::new(Expr::Coord(0)), 2))));
        let e = parse("x1 - x2 - x3").unwrap();
        assert_eq!(e.to_string(), "x1 - x2 - x3");
        let e = Expr::Sub(Box::new(Expr::Coord(1)), Box::new(Expr::Sub(Box::new(Expr::Coord(2)), Box::new(Expr::Coord(3)))));
        assert_eq!(e.to_string(), "x1 - (x2 - x3)");
        assert_eq!(parse("3/2i").unwrap(), Expr::Number { num: 3.into(), den: 2.into(), imag: true });
    }

    #[test]
    fn errors_carry_positions() {
        match parse("tau[9]") {
            Err(KminkError::IndexOutOfRange { name, index, at }) => {
                assert_eq!((name.as_str(), index.as_str(), at.column), ("tau", "9", 5));
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse("x4"), Err(KminkError::IndexOutOfRange { .. })));
        assert!(matches!(parse("foo + 1"), Err(KminkError::UnknownSymbol { .. })));
        match parse("x0 +\n  * x1") {
            Err(KminkError::Syntax { at, .. }) => assert_eq!((at.line, at.column), (2, 3)),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse("1/0"), Err(KminkError::Syntax { .. })));
        assert!(matches!(parse("x0^2^3"), Err(KminkError::Syntax { .. })));
        assert!(matches!(parse("x0 $"), Err(KminkError::Syntax { .. })));
    }

    #[test]
    fn random_roundtrip() {
        let mut gen = Generator::new(11, 2);
        for _ in 0..300 {
            let e = random_expr(&mut gen, 4);
            assert_eq!(parse(&e.to_string()).unwrap(), e, "{e}");
        }
    }
}
