use super::{Law, LawKind, OmegaError, Result, Term};

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    text: &'a str,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser { chars: text.char_indices().collect(), pos: 0, text }
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.text.len(), |&(i, _)| i)
    }

    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(OmegaError::SyntaxError(self.offset(), msg.to_string()))
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|&(_, c)| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn at_factor_start(&mut self) -> bool {
        matches!(self.peek(), Some(c) if c.is_ascii_alphabetic() || c == '(' || c == '0' || c == '1')
    }

    fn term(&mut self) -> Result<Term> {
        let mut parts = vec![self.factor()?];
        loop {
            if self.peek() == Some('*') {
                self.bump();
                parts.push(self.factor()?);
            } else if self.at_factor_start() {
                parts.push(self.factor()?);
            } else {
                break;
            }
        }
        Ok(Term::concat(parts))
    }

    fn number(&mut self) -> Option<usize> {
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|&(_, c)| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let digits: String = self.chars[start..self.pos].iter().map(|&(_, c)| c).collect();
        digits.parse().ok()
    }

    fn factor(&mut self) -> Result<Term> {
        let mut t = self.atom()?;
        while self.peek() == Some('^') {
            self.bump();
            match self.peek() {
                Some('w') | Some('ω') => {
                    self.bump();
                    t = Term::omega(t);
                }
                Some(c) if c.is_ascii_digit() => {
                    let at = self.offset();
                    match self.number() {
                        Some(n) if n >= 1 => t = Term::pow(t, n),
                        _ => return Err(OmegaError::SyntaxError(at, "exponent must be a positive integer".into())),
                    }
                }
                _ => return self.err("expected 'w' or a positive integer after '^'"),
            }
        }
        Ok(t)
    }

    fn atom(&mut self) -> Result<Term> {
        match self.peek() {
            Some('(') => {
                self.bump();
                let t = self.term()?;
                if self.peek() != Some(')') {
                    return self.err("expected ')'");
                }
                self.bump();
                Ok(t)
            }
            Some('1') => {
                self.bump();
                Ok(Term::One)
            }
            Some('0') => {
                self.bump();
                Ok(Term::Zero)
            }
            Some(c) if c.is_ascii_alphabetic() => {
                self.bump();
                let mut name = c.to_string();
                while let Some(&(_, d)) = self.chars.get(self.pos) {
                    if d.is_ascii_digit() || d == '\'' {
                        name.push(d);
                        self.pos += 1;
                    } else {
                        break;
                    }
                }
                Ok(Term::Var(name))
            }
            _ => self.err("expected a variable, '1', '0' or '('"),
        }
    }
}

/// Parses a single ω-term.
pub fn parse_term(text: &str) -> Result<Term> {
    let mut p = Parser::new(text);
    let t = p.term()?;
    if p.peek().is_some() {
        return p.err("unexpected trailing input");
    }
    Ok(t)
}

/// Parses `lhs = rhs` or `lhs <= rhs`. Letters are variables, optionally
/// followed by digits or primes; `^w` is the ω-power and `^N` an integer power.
pub fn parse_law(text: &str) -> Result<Law> {
    let mut p = Parser::new(text);
    let lhs = p.term()?;
    p.skip_ws();
    let at = p.offset();
    let kind = match p.bump() {
        Some('=') => LawKind::Equality,
        Some('<') if p.chars.get(p.pos).is_some_and(|&(_, c)| c == '=') => {
            p.pos += 1;
            LawKind::Inequality
        }
        Some('≤') => LawKind::Inequality,
        _ => return Err(OmegaError::SyntaxError(at, "expected '=' or '<='".into())),
    };
    let rhs = p.term()?;
    if p.peek().is_some() {
        return p.err("unexpected trailing input");
    }
    Ok(Law::new(lhs, rhs, kind))
}

/// One law per line; blank lines and `#` comments are skipped.
pub fn parse_laws(text: &str) -> Result<Vec<Law>> {
    text.lines().map(|l| l.split('#').next().unwrap_or("").trim()).filter(|l| !l.is_empty()).map(parse_law).collect()
}
