//! Recursive-descent parser for the term grammar
//!
//! ```text
//! term   := factor { factor }
//! factor := atom [ "^w" | "^" INT ]
//! atom   := LETTER | "1" | "(" term ")"
//! ```
//!
//! Whitespace is ignored and juxtaposition associates to the left.

use super::{power, Letter, OmegaTerm};
use crate::error::Error;

pub fn parse_term(text: &str) -> Result<OmegaTerm, Error> {
    let mut p = Parser::new(text);
    let t = p.term()?;
    p.skip_ws();
    if let Some((pos, c)) = p.peek() {
        return Err(p.error(pos, format!("unexpected {c:?}")));
    }
    Ok(t)
}

/// Parses a finite word such as `"ba"`; `""`, `"1"` and `"ε"` give the empty word.
pub fn parse_word(text: &str) -> Result<Vec<Letter>, Error> {
    let trimmed = text.trim();
    if trimmed.is_empty() || trimmed == "1" || trimmed == "ε" {
        return Ok(Vec::new());
    }
    trimmed
        .char_indices()
        .filter(|(_, c)| !c.is_whitespace())
        .map(|(pos, c)| {
            Letter::new(c).ok_or_else(|| Error::Parse {
                pos,
                msg: format!("{c:?} is not a letter"),
            })
        })
        .collect()
}

struct Parser {
    chars: Vec<(usize, char)>,
    at: usize,
    len: usize,
}

impl Parser {
    fn new(text: &str) -> Self {
        Parser {
            chars: text.char_indices().collect(),
            at: 0,
            len: text.len(),
        }
    }

    fn error(&self, pos: usize, msg: String) -> Error {
        Error::Parse { pos, msg }
    }

    fn skip_ws(&mut self) {
        while self.at < self.chars.len() && self.chars[self.at].1.is_whitespace() {
            self.at += 1;
        }
    }

    fn peek(&mut self) -> Option<(usize, char)> {
        self.skip_ws();
        self.chars.get(self.at).copied()
    }

    fn pos(&mut self) -> usize {
        self.peek().map(|(p, _)| p).unwrap_or(self.len)
    }

    fn starts_atom(c: char) -> bool {
        c == '(' || c == '1' || c.is_ascii_lowercase()
    }

    fn term(&mut self) -> Result<OmegaTerm, Error> {
        let mut acc = self.factor()?;
        while let Some((_, c)) = self.peek() {
            if !Self::starts_atom(c) {
                break;
            }
            let next = self.factor()?;
            acc = OmegaTerm::concat(acc, next);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<OmegaTerm, Error> {
        let base = self.atom()?;
        match self.peek() {
            Some((_, '^')) => {
                self.at += 1;
                match self.peek() {
                    Some((_, 'w')) => {
                        self.at += 1;
                        Ok(OmegaTerm::omega(base))
                    }
                    Some((pos, c)) if c.is_ascii_digit() => {
                        let mut digits = String::new();
                        while let Some((_, d)) = self.chars.get(self.at).copied() {
                            if !d.is_ascii_digit() {
                                break;
                            }
                            digits.push(d);
                            self.at += 1;
                        }
                        let k: usize = digits
                            .parse()
                            .map_err(|_| self.error(pos, format!("exponent {digits} too large")))?;
                        if k == 0 {
                            return Err(self.error(pos, "exponent 0 is not allowed".into()));
                        }
                        if k > 1 << 16 {
                            return Err(self.error(pos, format!("exponent {k} too large")));
                        }
                        power(&base, k)
                    }
                    Some((pos, c)) => Err(self.error(
                        pos,
                        format!("expected 'w' or an integer after '^', found {c:?}"),
                    )),
                    None => Err(self.error(self.len, "expected exponent after '^'".into())),
                }
            }
            _ => Ok(base),
        }
    }

    fn atom(&mut self) -> Result<OmegaTerm, Error> {
        match self.peek() {
            Some((_, '1')) => {
                self.at += 1;
                Ok(OmegaTerm::Identity)
            }
            Some((_, c)) if c.is_ascii_lowercase() => {
                self.at += 1;
                Ok(OmegaTerm::Letter(
                    Letter::new(c).expect("checked lowercase"),
                ))
            }
            Some((open, '(')) => {
                self.at += 1;
                let inner = self.term()?;
                match self.peek() {
                    Some((_, ')')) => {
                        self.at += 1;
                        Ok(inner)
                    }
                    Some((pos, c)) => Err(self.error(pos, format!("expected ')', found {c:?}"))),
                    None => {
                        Err(self
                            .error(self.len, format!("unbalanced parenthesis opened at {open}")))
                    }
                }
            }
            Some((pos, c)) => Err(self.error(pos, format!("unexpected {c:?}"))),
            None => {
                let pos = self.pos();
                Err(self.error(pos, "unexpected end of input".into()))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::format_term;
    use proptest::prelude::*;

    #[test]
    fn nested_term_left_associated() {
        let t = parse_term("(a a b^w)^w a b^w").unwrap();
        let a = || OmegaTerm::letter('a');
        let bw = || OmegaTerm::omega(OmegaTerm::letter('b'));
        let base = OmegaTerm::concat(OmegaTerm::concat(a(), a()), bw());
        let expected = OmegaTerm::concat(OmegaTerm::concat(OmegaTerm::omega(base), a()), bw());
        assert_eq!(t, expected);
    }

    #[test]
    fn identity_and_errors() {
        assert_eq!(parse_term("1").unwrap(), OmegaTerm::Identity);
        assert!(matches!(parse_term("((a b)^w"), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_term("a^0"),
            Err(Error::Parse { pos: 2, .. })
        ));
        assert!(parse_term("").is_err());
        assert!(parse_term("a)").is_err());
        assert!(parse_term("A").is_err());
        assert!(parse_term("a^").is_err());
    }

    #[test]
    fn integer_exponent_expands_to_power() {
        let t = parse_term("(a b)^2").unwrap();
        let ab = OmegaTerm::concat(OmegaTerm::letter('a'), OmegaTerm::letter('b'));
        assert_eq!(t, OmegaTerm::concat(ab.clone(), ab));
    }

    #[test]
    fn whitespace_is_ignored() {
        assert_eq!(
            parse_term(" ( a b ) ^ w").unwrap(),
            parse_term("(ab)^w").unwrap()
        );
        // `w` is an ordinary letter outside exponent position
        assert_eq!(
            parse_term("w^w").unwrap(),
            OmegaTerm::omega(OmegaTerm::letter('w'))
        );
    }

    #[test]
    fn words() {
        assert_eq!(parse_word("").unwrap(), vec![]);
        assert_eq!(parse_word("1").unwrap(), vec![]);
        assert_eq!(parse_word("ba").unwrap().len(), 2);
        assert!(parse_word("b1").is_err());
    }

    fn arb_term() -> impl Strategy<Value = OmegaTerm> {
        let leaf = prop_oneof![
            Just(OmegaTerm::Identity),
            (0u8..4).prop_map(|i| OmegaTerm::Letter(Letter(i))),
        ];
        leaf.prop_recursive(5, 24, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(l, r)| OmegaTerm::concat(l, r)),
                inner.prop_map(OmegaTerm::omega),
            ]
        })
    }

    proptest! {
        #[test]
        fn format_round_trips(t in arb_term()) {
            let printed = format_term(&t);
            prop_assert_eq!(parse_term(&printed).unwrap(), t);
        }
    }
}
