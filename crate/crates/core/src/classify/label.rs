//! Module labels: `N(…)`, `M(…)` and `hw: c1*w1 + … + cn*wn`, with an
//! optional `^*` contragredient suffix.
//!
//! Entries are affine in at most one symbol: `c0 + c1·a` or `c0 + c1·m`,
//! where `m` ranges over `ℤ≥0` and `a` over a chosen domain.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::{parse_rational, GaussRational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Symbol {
    /// A complex parameter.
    A,
    /// A nonnegative integer.
    M,
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Symbol::A => "a",
            Symbol::M => "m",
        })
    }
}

/// What the symbol `a` is assumed to range over. `Generic` means a
/// non-real complex number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SymbolDomain {
    #[default]
    Generic,
    NegativeReal,
    PositiveReal,
}

impl FromStr for SymbolDomain {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "generic" => Ok(Self::Generic),
            "negative" | "negative-real" => Ok(Self::NegativeReal),
            "positive" | "positive-real" => Ok(Self::PositiveReal),
            _ => Err(Error::Parse(format!("unknown symbol domain '{s}'"))),
        }
    }
}

/// `c0 + c1·sym`.
#[derive(Debug, Clone, PartialEq)]
pub struct Affine {
    pub c0: GaussRational,
    pub c1: GaussRational,
    pub sym: Option<Symbol>,
}

/// An interval of the real line traced by a real affine expression.
struct Range {
    lo: Option<(BigRational, bool)>,
    hi: Option<(BigRational, bool)>,
}

impl Range {
    fn below(&self, x: &BigRational, strict: bool) -> bool {
        // every point < x (or ≤ x)
        match &self.hi {
            None => false,
            Some((h, closed)) => match h.cmp(x) {
                Ordering::Less => true,
                Ordering::Equal => !strict || !closed,
                Ordering::Greater => false,
            },
        }
    }

    fn above(&self, x: &BigRational, strict: bool) -> bool {
        match &self.lo {
            None => false,
            Some((l, closed)) => match l.cmp(x) {
                Ordering::Greater => true,
                Ordering::Equal => !strict || !closed,
                Ordering::Less => false,
            },
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Integrality {
    Always,
    Never,
    Maybe,
}

fn is_int(r: &BigRational) -> bool {
    r.is_integer()
}

impl Affine {
    pub fn constant(c: GaussRational) -> Self {
        Self { c0: c, c1: GaussRational::from_i64(0), sym: None }
    }

    pub fn int(v: i64) -> Self {
        Self::constant(GaussRational::from_i64(v))
    }

    pub fn symbol(s: Symbol) -> Self {
        Self { c0: GaussRational::from_i64(0), c1: GaussRational::from_i64(1), sym: Some(s) }
    }

    fn normalized(mut self) -> Self {
        if crate::scalar::Field::is_zero(&self.c1) {
            self.sym = None;
        }
        if self.sym.is_none() {
            self.c1 = GaussRational::from_i64(0);
        }
        self
    }

    pub fn as_constant(&self) -> Option<&GaussRational> {
        self.sym.is_none().then_some(&self.c0)
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        let sym = match (self.sym, o.sym) {
            (Some(x), Some(y)) if x != y => {
                return Err(Error::Parse("an entry may involve only one symbol".into()));
            }
            (x, y) => x.or(y),
        };
        Ok(Self { c0: self.c0.clone() + o.c0.clone(), c1: self.c1.clone() + o.c1.clone(), sym }.normalized())
    }

    pub fn neg(&self) -> Self {
        Self { c0: -self.c0.clone(), c1: -self.c1.clone(), sym: self.sym }
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        match (self.as_constant(), o.as_constant()) {
            (Some(c), _) => Ok(Self { c0: c.clone() * o.c0.clone(), c1: c.clone() * o.c1.clone(), sym: o.sym }.normalized()),
            (_, Some(c)) => Ok(Self { c0: self.c0.clone() * c.clone(), c1: self.c1.clone() * c.clone(), sym: self.sym }.normalized()),
            _ => Err(Error::Parse("entries must be affine in the symbol".into())),
        }
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        let c = o.as_constant().ok_or_else(|| Error::Parse("cannot divide by a symbolic value".into()))?;
        if crate::scalar::Field::is_zero(c) {
            return Err(Error::Parse("division by zero".into()));
        }
        Ok(Self { c0: self.c0.clone() / c.clone(), c1: self.c1.clone() / c.clone(), sym: self.sym }.normalized())
    }

    /// Real range and integrality when the expression is real-valued over the
    /// whole domain; `Err(Some(false))` when it is never real, `Err(None)`
    /// when realness depends on the value.
    fn real_profile(&self, domain: SymbolDomain) -> std::result::Result<(Range, Integrality), Option<bool>> {
        let Some(sym) = self.sym else {
            if !self.c0.im.is_zero() {
                return Err(Some(false));
            }
            let v = self.c0.re.clone();
            let integral = if is_int(&v) { Integrality::Always } else { Integrality::Never };
            return Ok((Range { lo: Some((v.clone(), true)), hi: Some((v, true)) }, integral));
        };
        if sym == Symbol::A && domain == SymbolDomain::Generic {
            // c0 + c1·a with a non-real and c1 ≠ 0 is not real
            return Err(Some(false));
        }
        if !self.c1.im.is_zero() {
            // the imaginary part vanishes at one parameter value t at most
            let t = -self.c0.im.clone() / self.c1.im.clone();
            let in_domain = match (sym, domain) {
                (Symbol::M, _) => is_int(&t) && !t.is_negative(),
                (_, SymbolDomain::NegativeReal) => t.is_negative(),
                _ => t.is_positive(),
            };
            return Err(if in_domain { None } else { Some(false) });
        }
        if !self.c0.im.is_zero() {
            return Err(Some(false));
        }
        let (c0, c1) = (self.c0.re.clone(), self.c1.re.clone());
        // m runs over [0,∞), a over (0,∞) or (−∞,0)
        let closed = sym == Symbol::M;
        let increasing = match (sym, domain) {
            (Symbol::A, SymbolDomain::NegativeReal) => c1.is_negative(),
            _ => c1.is_positive(),
        };
        let range = if increasing {
            Range { lo: Some((c0.clone(), closed)), hi: None }
        } else {
            Range { lo: None, hi: Some((c0.clone(), closed)) }
        };
        let integral = match sym {
            Symbol::A => Integrality::Maybe,
            Symbol::M if is_int(&c0) && is_int(&c1) => Integrality::Always,
            Symbol::M if is_int(&c1) => Integrality::Never,
            Symbol::M => {
                let den: i64 = c1.denom().try_into().unwrap_or(i64::MAX).min(1 << 20);
                let hit = (0..den).any(|k| is_int(&(c0.clone() + c1.clone() * BigRational::from_integer(k.into()))));
                if hit {
                    Integrality::Maybe
                } else {
                    Integrality::Never
                }
            }
        };
        Ok((range, integral))
    }

    pub fn is_negative_real(&self, domain: SymbolDomain) -> Option<bool> {
        let zero = BigRational::zero();
        match self.real_profile(domain) {
            Err(v) => v,
            Ok((r, _)) => {
                if r.below(&zero, true) {
                    Some(true)
                } else if r.above(&zero, false) {
                    Some(false)
                } else {
                    None
                }
            }
        }
    }

    pub fn is_positive_real(&self, domain: SymbolDomain) -> Option<bool> {
        self.neg().is_negative_real(domain)
    }

    pub fn is_nonneg_integer(&self, domain: SymbolDomain) -> Option<bool> {
        let zero = BigRational::zero();
        match self.real_profile(domain) {
            Err(v) => v,
            Ok((r, integral)) => {
                if integral == Integrality::Never || r.below(&zero, true) {
                    Some(false)
                } else if integral == Integrality::Always && r.above(&zero, false) {
                    Some(true)
                } else {
                    None
                }
            }
        }
    }

    pub fn is_negative_integer(&self, domain: SymbolDomain) -> Option<bool> {
        let zero = BigRational::zero();
        match self.real_profile(domain) {
            Err(v) => v,
            Ok((r, integral)) => {
                if integral == Integrality::Never || r.above(&zero, false) {
                    Some(false)
                } else if integral == Integrality::Always && r.below(&zero, true) {
                    Some(true)
                } else {
                    None
                }
            }
        }
    }

    /// Whether the expression equals `c` (tri-state over the symbol's domain).
    pub fn equals(&self, c: &GaussRational, domain: SymbolDomain) -> Option<bool> {
        let Some(sym) = self.sym else { return Some(self.c0 == *c) };
        let sol = (c.clone() - self.c0.clone()) / self.c1.clone();
        let possible = match sym {
            Symbol::M => sol.im.is_zero() && is_int(&sol.re) && !sol.re.is_negative(),
            Symbol::A => match domain {
                SymbolDomain::Generic => false,
                SymbolDomain::NegativeReal => sol.im.is_zero() && sol.re.is_negative(),
                SymbolDomain::PositiveReal => sol.im.is_zero() && sol.re.is_positive(),
            },
        };
        if possible {
            None
        } else {
            Some(false)
        }
    }

    /// Structural or value equality of two entries.
    pub fn same_as(&self, o: &Self, domain: SymbolDomain) -> Option<bool> {
        if self == o {
            return Some(true);
        }
        match self.sub(o) {
            Ok(d) => d.equals(&GaussRational::from_i64(0), domain),
            Err(_) => None,
        }
    }
}

impl fmt::Display for Affine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Some(sym) = self.sym else { return write!(f, "{}", self.c0) };
        let zero = GaussRational::from_i64(0);
        let one = GaussRational::from_i64(1);
        let sym_part = if self.c1 == one {
            sym.to_string()
        } else if self.c1 == -one.clone() {
            format!("-{sym}")
        } else if self.c1.is_real() {
            format!("{}*{sym}", self.c1)
        } else {
            format!("({})*{sym}", self.c1)
        };
        if self.c0 == zero {
            return f.write_str(&sym_part);
        }
        let c0 = if self.c0.is_real() { self.c0.to_string() } else { format!("({})", self.c0) };
        match sym_part.strip_prefix('-') {
            Some(rest) => write!(f, "{c0}-{rest}"),
            None => write!(f, "{c0}+{sym_part}"),
        }
    }
}

impl Serialize for Affine {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

struct ExprParser<'a> {
    chars: Vec<char>,
    pos: usize,
    src: &'a str,
}

impl<'a> ExprParser<'a> {
    fn new(src: &'a str) -> Self {
        Self { chars: src.chars().filter(|c| !c.is_whitespace()).collect(), pos: 0, src }
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} in entry '{}'", self.src))
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Affine> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                '+' => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?)?;
                }
                '-' | '−' => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?)?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Affine> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.factor()?)?;
                }
                Some('/') => {
                    self.pos += 1;
                    acc = acc.div(&self.factor()?)?;
                }
                // implicit product: `2a`, `3(1+a)`, `2i`
                Some(c) if c == 'a' || c == 'm' || c == '(' || c == 'i' => {
                    acc = acc.mul(&self.factor()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Affine> {
        match self.peek() {
            Some('-') | Some('−') => {
                self.pos += 1;
                Ok(self.factor()?.neg())
            }
            Some('+') => {
                self.pos += 1;
                self.factor()
            }
            _ => self.primary(),
        }
    }

    fn primary(&mut self) -> Result<Affine> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.err("unbalanced parenthesis"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some('a') => {
                self.pos += 1;
                Ok(Affine::symbol(Symbol::A))
            }
            Some('m') => {
                self.pos += 1;
                Ok(Affine::symbol(Symbol::M))
            }
            Some('i') => {
                self.pos += 1;
                Ok(Affine::constant(GaussRational::imag_unit()))
            }
            Some(c) if c.is_ascii_digit() || c == '.' => {
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_ascii_digit() || c == '.') {
                    self.pos += 1;
                }
                let text: String = self.chars[start..self.pos].iter().collect();
                Ok(Affine::constant(GaussRational::real(parse_rational(&text)?)))
            }
            _ => Err(self.err("unexpected character")),
        }
    }
}

/// Parses one affine entry such as `-1/2`, `-1-m`, `2a+1`, `-1.5+0.25i`.
pub fn parse_affine(text: &str) -> Result<Affine> {
    let mut p = ExprParser::new(text);
    if p.chars.is_empty() {
        return Err(Error::Parse("empty entry".into()));
    }
    let e = p.expr()?;
    if p.pos != p.chars.len() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Family {
    N,
    M,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LabelForm {
    Tuple(Vec<Affine>),
    /// Coefficients of `ω_1, …` keyed by 1-based index; omitted ones are 0.
    Hw(BTreeMap<usize, Affine>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModuleLabel {
    pub family: Family,
    pub form: LabelForm,
    pub contragredient: bool,
    pub a_domain: SymbolDomain,
}

impl ModuleLabel {
    pub fn tuple(family: Family, entries: Vec<Affine>) -> Self {
        Self { family, form: LabelForm::Tuple(entries), contragredient: false, a_domain: SymbolDomain::Generic }
    }

    pub fn with_domain(mut self, d: SymbolDomain) -> Self {
        self.a_domain = d;
        self
    }

    /// Tuple length, or the largest `ω` index of a highest-weight form.
    pub fn rank(&self) -> usize {
        match &self.form {
            LabelForm::Tuple(e) => e.len(),
            LabelForm::Hw(m) => m.keys().next_back().copied().unwrap_or(0),
        }
    }

    /// Checks the label against rank `n`, padding a highest-weight form with
    /// zero coefficients.
    pub fn with_rank(mut self, n: usize) -> Result<Self> {
        if self.rank() > n || (matches!(self.form, LabelForm::Tuple(_)) && self.rank() != n) {
            return Err(Error::RankMismatch { expected: n, got: self.rank() });
        }
        if let LabelForm::Hw(m) = &mut self.form {
            for i in 1..=n {
                m.entry(i).or_insert_with(|| Affine::int(0));
            }
        }
        Ok(self)
    }

    /// Highest-weight coefficients padded to rank `n`.
    pub fn hw_coeffs(&self, n: usize) -> Option<Vec<Affine>> {
        match &self.form {
            LabelForm::Tuple(_) => None,
            LabelForm::Hw(m) => Some((1..=n).map(|i| m.get(&i).cloned().unwrap_or_else(|| Affine::int(0))).collect()),
        }
    }
}

impl fmt::Display for ModuleLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.form {
            LabelForm::Tuple(e) => {
                let name = if self.family == Family::N { "N" } else { "M" };
                let inner: Vec<String> = e.iter().map(ToString::to_string).collect();
                write!(f, "{name}({})", inner.join(","))?;
            }
            LabelForm::Hw(m) => {
                let terms: Vec<String> = m.iter().map(|(i, c)| format!("({c})*w{i}")).collect();
                write!(f, "hw: {}", if terms.is_empty() { "0".into() } else { terms.join(" + ") })?;
            }
        }
        if self.contragredient {
            f.write_str("^*")?;
        }
        Ok(())
    }
}

impl Serialize for ModuleLabel {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

/// Splits at top-level commas.
fn split_top(text: &str, sep: char) -> Vec<&str> {
    let mut depth = 0i32;
    let mut out = Vec::new();
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&text[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&text[start..]);
    out
}

fn parse_hw(body: &str) -> Result<BTreeMap<usize, Affine>> {
    let s: String = body.chars().filter(|c| !c.is_whitespace()).collect();
    let chars: Vec<char> = s.chars().collect();
    let mut out: BTreeMap<usize, Affine> = BTreeMap::new();
    if s == "0" {
        return Ok(out);
    }
    let mut start = 0;
    let mut i = 0;
    let mut depth = 0;
    while i < chars.len() {
        match chars[i] {
            '(' => depth += 1,
            ')' => depth -= 1,
            'w' | 'ω' if depth == 0 => {
                let coef: String = chars[start..i].iter().collect();
                let mut j = i + 1;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                let idx: usize = chars[i + 1..j]
                    .iter()
                    .collect::<String>()
                    .parse()
                    .map_err(|_| Error::Parse(format!("missing fundamental weight index in '{body}'")))?;
                if idx == 0 {
                    return Err(Error::Parse("fundamental weights are numbered from 1".into()));
                }
                let coef = coef.strip_suffix('*').unwrap_or(&coef);
                let c = match coef {
                    "" | "+" => Affine::int(1),
                    "-" => Affine::int(-1),
                    _ => parse_affine(coef.strip_prefix('+').unwrap_or(coef))?,
                };
                let entry = out.remove(&idx).unwrap_or_else(|| Affine::int(0));
                out.insert(idx, entry.add(&c)?);
                start = j;
                i = j;
                continue;
            }
            _ => {}
        }
        i += 1;
    }
    if start != chars.len() {
        return Err(Error::Parse(format!("trailing text in highest weight '{body}'")));
    }
    Ok(out)
}

impl FromStr for ModuleLabel {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut t = text.trim();
        let mut contragredient = false;
        if let Some(rest) = t.strip_suffix("^*") {
            contragredient = true;
            t = rest.trim_end();
        }
        if let Some(body) = t.strip_prefix("hw:") {
            return Ok(Self {
                family: Family::N,
                form: LabelForm::Hw(parse_hw(body)?),
                contragredient,
                a_domain: SymbolDomain::Generic,
            });
        }
        let family = match t.chars().next() {
            Some('N') => Family::N,
            Some('M') => Family::M,
            _ => return Err(Error::Parse(format!("label '{text}' must start with N(, M( or hw:"))),
        };
        let body = t[1..]
            .trim_start()
            .strip_prefix('(')
            .and_then(|b| b.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("label '{text}' is missing parentheses")))?;
        let entries = split_top(body, ',').into_iter().map(parse_affine).collect::<Result<Vec<_>>>()?;
        Ok(Self { family, form: LabelForm::Tuple(entries), contragredient, a_domain: SymbolDomain::Generic })
    }
}
