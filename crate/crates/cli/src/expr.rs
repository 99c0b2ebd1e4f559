//! Parser for loop-polynomial expressions: sums of rational-coefficient
//! monomials in parenthesized class literals, e.g.
//! `3*(ab)(ab) + 1/2*(aB) - 2*()`. The empty literal `()` is the constant
//! class; a bare coefficient is a scalar term.

use loopalg::coeff::{coeff_int, coeff_ratio, Coeff};
use loopalg::poisson::SymPoly;
use loopalg::words::OrientedClass;

pub fn parse_loop_expr(text: &str, rank: usize) -> Result<SymPoly<OrientedClass>, String> {
    let mut p = Parser {
        chars: text.chars().collect(),
        pos: 0,
    };
    p.skip_ws();
    if p.at_end() {
        return Err("empty expression".into());
    }
    let mut out = SymPoly::zero();
    let mut first = true;
    loop {
        p.skip_ws();
        let mut negative = false;
        if let Some(c) = p.peek() {
            if c == '+' || c == '-' {
                negative = c == '-';
                p.advance();
            } else if !first {
                return Err(format!("expected '+' or '-' at position {}", p.pos + 1));
            }
        }
        p.skip_ws();
        let (mut coeff, monomial) = p.term(rank)?;
        if negative {
            coeff = -coeff;
        }
        out.add_term(monomial, coeff);
        first = false;
        p.skip_ws();
        if p.at_end() {
            break;
        }
        match p.peek() {
            Some('+') | Some('-') => {}
            Some(c) => return Err(format!("unexpected character '{c}' at position {}", p.pos + 1)),
            None => break,
        }
    }
    Ok(out)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn advance(&mut self) {
        self.pos += 1;
    }

    fn at_end(&self) -> bool {
        self.pos >= self.chars.len()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_whitespace()) {
            self.advance();
        }
    }

    fn integer(&mut self) -> Result<i64, String> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.advance();
        }
        if self.pos == start {
            return Err(format!("expected a number at position {}", start + 1));
        }
        self.chars[start..self.pos]
            .iter()
            .collect::<String>()
            .parse::<i64>()
            .map_err(|e| format!("bad number at position {}: {e}", start + 1))
    }

    /// term := coeff '*' factor+ | coeff | factor+
    fn term(&mut self, rank: usize) -> Result<(Coeff, Vec<OrientedClass>), String> {
        let mut coeff = coeff_int(1);
        let has_coeff = self.peek().is_some_and(|c| c.is_ascii_digit());
        if has_coeff {
            let num = self.integer()?;
            self.skip_ws();
            if self.peek() == Some('/') {
                self.advance();
                self.skip_ws();
                let den = self.integer()?;
                if den == 0 {
                    return Err("zero denominator".into());
                }
                coeff = coeff_ratio(num, den);
            } else {
                coeff = coeff_int(num);
            }
            self.skip_ws();
            if self.peek() == Some('*') {
                self.advance();
                self.skip_ws();
            } else {
                // bare scalar term
                return Ok((coeff, Vec::new()));
            }
        }
        let mut monomial = Vec::new();
        while self.peek() == Some('(') {
            self.advance();
            let start = self.pos;
            while self.peek().is_some_and(|c| c != ')') {
                self.advance();
            }
            if self.peek() != Some(')') {
                return Err(format!("unclosed '(' at position {start}"));
            }
            let word: String = self.chars[start..self.pos].iter().collect();
            self.advance();
            let class = OrientedClass::parse(word.trim(), rank)
                .map_err(|e| format!("bad class literal ({word}): {e}"))?;
            monomial.push(class);
            self.skip_ws();
        }
        if monomial.is_empty() {
            return Err(format!(
                "expected a class literal '(' at position {}",
                self.pos + 1
            ));
        }
        Ok((coeff, monomial))
    }
}
