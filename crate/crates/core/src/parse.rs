//! Text syntax for braid and singular braid words.
//!
//! ```text
//! word  := token*
//! token := kind INT ["^" SIGNED_INT]
//! kind  := "s" | "S" | "t" | "d"
//! ```
//!
//! `S<i>` abbreviates `s<i>^-1`. Tokens may be separated by whitespace or written
//! back to back (`s1s2S1`). Exponents on `t` and `d` must be positive.

use thiserror::Error;

use crate::braid::{BraidWord, Letter};
use crate::singular::{SingularLetter, SingularWord};

/// A syntax or range error; `token` is the 1-based position of the offending token.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("token {token} (`{text}`): {message}")]
pub struct ParseError {
    pub token: usize,
    pub text: String,
    pub message: String,
}

const MAX_EXPONENT: i64 = 10_000;

struct Token {
    text: String,
    kind: char,
    index: usize,
    exponent: i64,
}

fn scan(input: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = input.chars().collect();
    let mut tokens = Vec::new();
    let mut pos = 0;
    while pos < chars.len() {
        if chars[pos].is_whitespace() {
            pos += 1;
            continue;
        }
        let start = pos;
        let token = tokens.len() + 1;
        let fail = |end: usize, message: &str| ParseError {
            token,
            text: chars[start..end.min(chars.len())].iter().collect(),
            message: message.to_string(),
        };
        let kind = chars[pos];
        if !matches!(kind, 's' | 'S' | 't' | 'd') {
            return Err(fail(pos + 1, "expected one of s, S, t, d"));
        }
        pos += 1;
        let digits = pos;
        while pos < chars.len() && chars[pos].is_ascii_digit() {
            pos += 1;
        }
        if digits == pos {
            return Err(fail(pos + 1, "missing generator index"));
        }
        let index: usize = chars[digits..pos]
            .iter()
            .collect::<String>()
            .parse()
            .map_err(|_| fail(pos, "generator index too large"))?;
        let mut exponent = 1i64;
        if pos < chars.len() && chars[pos] == '^' {
            pos += 1;
            let sign_start = pos;
            if pos < chars.len() && (chars[pos] == '-' || chars[pos] == '+') {
                pos += 1;
            }
            let exp_digits = pos;
            while pos < chars.len() && chars[pos].is_ascii_digit() {
                pos += 1;
            }
            if exp_digits == pos {
                return Err(fail(pos + 1, "missing exponent"));
            }
            exponent = chars[sign_start..pos]
                .iter()
                .collect::<String>()
                .parse()
                .map_err(|_| fail(pos, "exponent too large"))?;
        }
        if exponent.abs() > MAX_EXPONENT {
            return Err(fail(pos, "exponent too large"));
        }
        if kind == 'S' {
            exponent = -exponent;
        }
        if matches!(kind, 't' | 'd') && exponent < 1 {
            return Err(fail(pos, "singular letters take only positive exponents"));
        }
        if index == 0 {
            return Err(fail(pos, "generator indices start at 1"));
        }
        tokens.push(Token {
            text: chars[start..pos].iter().collect(),
            kind: kind.to_ascii_lowercase(),
            index,
            exponent,
        });
    }
    Ok(tokens)
}

fn strand_count(tokens: &[Token], n: Option<usize>) -> Result<usize, ParseError> {
    let inferred = tokens.iter().map(|t| t.index + 1).max().unwrap_or(1);
    match n {
        None => Ok(inferred),
        Some(n) => match tokens.iter().enumerate().find(|(_, t)| t.index >= n) {
            Some((pos, t)) => Err(ParseError {
                token: pos + 1,
                text: t.text.clone(),
                message: format!("index {} out of range for {n} strands", t.index),
            }),
            None => Ok(n),
        },
    }
}

/// Parses a word that may contain singular letters. Without `n`, the strand
/// count is one more than the largest index (1 for the empty word).
pub fn parse_singular(input: &str, n: Option<usize>) -> Result<SingularWord, ParseError> {
    let tokens = scan(input)?;
    let n = strand_count(&tokens, n)?;
    let mut letters = Vec::new();
    for t in &tokens {
        let count = t.exponent.unsigned_abs() as usize;
        let letter = match t.kind {
            's' if t.exponent < 0 => SingularLetter::Sigma(Letter::neg(t.index)),
            's' => SingularLetter::Sigma(Letter::pos(t.index)),
            't' => SingularLetter::Tau(t.index),
            _ => SingularLetter::Delta(t.index),
        };
        letters.extend(std::iter::repeat_n(letter, count));
    }
    Ok(SingularWord::new(n, letters).expect("indices were range checked"))
}

/// Parses a braid word; singular letters are rejected.
pub fn parse_braid(input: &str, n: Option<usize>) -> Result<BraidWord, ParseError> {
    let tokens = scan(input)?;
    if let Some((pos, t)) = tokens.iter().enumerate().find(|(_, t)| t.kind != 's') {
        return Err(ParseError {
            token: pos + 1,
            text: t.text.clone(),
            message: "singular letter in a braid word".into(),
        });
    }
    let w = parse_singular(input, n)?;
    let letters = w
        .letters()
        .iter()
        .map(|l| match l {
            SingularLetter::Sigma(s) => *s,
            _ => unreachable!(),
        })
        .collect();
    Ok(BraidWord::new(w.n(), letters).expect("indices were range checked"))
}
