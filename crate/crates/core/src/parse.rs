//! Polynomial expression syntax: terms joined by `+`/`-`, each term an
//! optional integer coefficient followed by whitespace-separated generator
//! names. A lone integer is a constant (`1` is the empty word).

use std::sync::Arc;

use thiserror::Error;

use crate::field::PrimeField;
use crate::poly::Polynomial;
use crate::word::{Alphabet, Letter};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unexpected character `{ch}` at position {pos}")]
    UnexpectedChar { ch: char, pos: usize },
    #[error("empty term at position {pos}")]
    EmptyTerm { pos: usize },
    #[error("unknown generator `{name}` at position {pos}")]
    UnknownGenerator { name: String, pos: usize },
    #[error("coefficient at position {pos} must precede the generator names")]
    MisplacedCoefficient { pos: usize },
    #[error("integer out of range at position {pos}")]
    Overflow { pos: usize },
}

#[derive(Debug)]
enum Token {
    Int(i64, usize),
    Name(String, usize),
    Plus(usize),
    Minus(usize),
    Star,
}

fn tokenize(text: &str) -> Result<Vec<Token>, ParseError> {
    let mut tokens = Vec::new();
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c == '+' {
            tokens.push(Token::Plus(pos));
            i += 1;
        } else if c == '-' {
            tokens.push(Token::Minus(pos));
            i += 1;
        } else if c == '*' {
            tokens.push(Token::Star);
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().map(|&(_, c)| c).collect();
            let v = s.parse::<i64>().map_err(|_| ParseError::Overflow { pos })?;
            tokens.push(Token::Int(v, pos));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].1.is_alphanumeric() || chars[i].1 == '_') {
                i += 1;
            }
            let s: String = chars[start..i].iter().map(|&(_, c)| c).collect();
            tokens.push(Token::Name(s, pos));
        } else {
            return Err(ParseError::UnexpectedChar { ch: c, pos });
        }
    }
    Ok(tokens)
}

pub fn parse_polynomial(
    alphabet: &Arc<Alphabet>,
    field: PrimeField,
    text: &str,
) -> Result<Polynomial, ParseError> {
    let tokens = tokenize(text)?;
    let mut terms: Vec<(i64, crate::word::Word)> = Vec::new();
    let mut sign = 1i64;
    let mut coeff: Option<i64> = None;
    let mut letters: Vec<Letter> = Vec::new();
    let mut term_start = 0usize;
    let mut seen_any = false;

    let flush = |sign: i64,
                     coeff: &mut Option<i64>,
                     letters: &mut Vec<Letter>,
                     start: usize,
                     terms: &mut Vec<(i64, crate::word::Word)>|
     -> Result<(), ParseError> {
        if coeff.is_none() && letters.is_empty() {
            return Err(ParseError::EmptyTerm { pos: start });
        }
        let c = coeff.take().unwrap_or(1);
        terms.push((sign * c, alphabet.word_from_letters(letters)));
        letters.clear();
        Ok(())
    };

    for tok in &tokens {
        match tok {
            Token::Plus(pos) | Token::Minus(pos) => {
                let s = if matches!(tok, Token::Minus(_)) { -1 } else { 1 };
                if !seen_any && coeff.is_none() && letters.is_empty() && terms.is_empty() {
                    // Leading sign.
                    sign = s;
                    term_start = *pos + 1;
                    continue;
                }
                flush(sign, &mut coeff, &mut letters, term_start, &mut terms)?;
                sign = s;
                term_start = *pos + 1;
            }
            Token::Int(v, pos) => {
                if !letters.is_empty() || coeff.is_some() {
                    return Err(ParseError::MisplacedCoefficient { pos: *pos });
                }
                coeff = Some(*v);
                seen_any = true;
            }
            Token::Name(name, pos) => {
                let l = alphabet
                    .lookup(name)
                    .map_err(|_| ParseError::UnknownGenerator {
                        name: name.clone(),
                        pos: *pos,
                    })?;
                letters.push(l);
                seen_any = true;
            }
            Token::Star => {}
        }
    }
    flush(sign, &mut coeff, &mut letters, term_start, &mut terms)?;
    Ok(Polynomial::from_terms(alphabet, field, terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::GeneratorSpec;

    fn alphabet() -> Arc<Alphabet> {
        Alphabet::new(vec![
            GeneratorSpec::new("a0", 1, 0),
            GeneratorSpec::new("b0", 1, 1),
            GeneratorSpec::new("e12_1", 1, 2),
        ])
        .unwrap()
    }

    #[test]
    fn parses_sums() {
        let x = alphabet();
        let f2 = PrimeField::new(2).unwrap();
        let p = parse_polynomial(&x, f2, "b0 a0 b0 a0 + a0 b0 a0 b0").unwrap();
        assert_eq!(p.len(), 2);
        let one = parse_polynomial(&x, f2, "1").unwrap();
        assert_eq!(one.to_string(), "1");
        let f5 = PrimeField::new(5).unwrap();
        let q = parse_polynomial(&x, f5, "-3 a0 + 2*b0 - e12_1").unwrap();
        assert_eq!(q.to_string(), "-e12_1 + 2 b0 + 2 a0");
    }

    #[test]
    fn reports_positions() {
        let x = alphabet();
        let f2 = PrimeField::new(2).unwrap();
        assert_eq!(
            parse_polynomial(&x, f2, "a0 + zz").unwrap_err(),
            ParseError::UnknownGenerator {
                name: "zz".into(),
                pos: 5
            }
        );
        assert_eq!(
            parse_polynomial(&x, f2, "a0 + + b0").unwrap_err(),
            ParseError::EmptyTerm { pos: 4 }
        );
        assert_eq!(
            parse_polynomial(&x, f2, "a0 ? b0").unwrap_err(),
            ParseError::UnexpectedChar { ch: '?', pos: 3 }
        );
        assert!(matches!(
            parse_polynomial(&x, f2, "a0 3").unwrap_err(),
            ParseError::MisplacedCoefficient { .. }
        ));
    }
}
