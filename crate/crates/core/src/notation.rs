//! Bracket notation for games: parsing and deterministic rendering.
//!
//! Grammar:
//!
//! ```text
//! game := "~" game | "{" opts "|" opts "}" | constant
//! opts := ε | "." | game ("," game)*
//! constant := "0" | "1" | "2" | "*" | "*2" | "2#" | "2#0" | "2#20" | "a"
//! ```
//!
//! `~` is conjugation, a dot (or nothing) is an empty option set.
//! [`render`] emits raw braces only and is bit-stable: options are printed
//! in a structural order, so equal games render identically regardless of
//! interning history. [`render_pretty`] abbreviates known constants inside
//! the top-level braces.

use std::collections::HashMap;
use std::sync::{Arc, LazyLock};

use dashmap::DashMap;
use thiserror::Error;

use crate::game::{constants, Game};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("unexpected end of input at byte {0}")]
    UnexpectedEnd(usize),
    #[error("unexpected character {found:?} at byte {pos}")]
    UnexpectedChar { pos: usize, found: char },
    #[error("unknown constant {name:?} at byte {pos}")]
    UnknownConstant { pos: usize, name: String },
    #[error("trailing input at byte {0}")]
    TrailingInput(usize),
}

fn constant_table() -> Vec<(&'static str, Game)> {
    vec![
        ("0", constants::zero()),
        ("1", constants::one()),
        ("2", constants::two()),
        ("*", constants::star()),
        ("*2", constants::star2()),
        ("2#", constants::two_sharp()),
        ("2#0", constants::two_sharp_zero()),
        ("2#20", constants::two_sharp_two_zero()),
        ("a", constants::a()),
    ]
}

struct Parser<'a> {
    text: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.text.get(self.pos).copied()
    }

    fn expect(&mut self, byte: u8) -> Result<(), ParseError> {
        match self.peek() {
            Some(b) if b == byte => {
                self.pos += 1;
                Ok(())
            }
            Some(b) => Err(ParseError::UnexpectedChar {
                pos: self.pos,
                found: b as char,
            }),
            None => Err(ParseError::UnexpectedEnd(self.pos)),
        }
    }

    fn game(&mut self) -> Result<Game, ParseError> {
        match self.peek() {
            Some(b'~') => {
                self.pos += 1;
                Ok(self.game()?.conjugate())
            }
            Some(b'{') => {
                self.pos += 1;
                let left = self.options()?;
                self.expect(b'|')?;
                let right = self.options()?;
                self.expect(b'}')?;
                Ok(Game::make(&left, &right))
            }
            Some(_) => self.constant(),
            None => Err(ParseError::UnexpectedEnd(self.pos)),
        }
    }

    fn options(&mut self) -> Result<Vec<Game>, ParseError> {
        match self.peek() {
            // Empty set: nothing before the delimiter, or an explicit dot.
            Some(b'|') | Some(b'}') => Ok(Vec::new()),
            Some(b'.') => {
                self.pos += 1;
                Ok(Vec::new())
            }
            _ => {
                let mut opts = vec![self.game()?];
                while self.peek() == Some(b',') {
                    self.pos += 1;
                    opts.push(self.game()?);
                }
                Ok(opts)
            }
        }
    }

    fn constant(&mut self) -> Result<Game, ParseError> {
        let start = self.pos;
        let is_word_byte = |b: u8| b.is_ascii_alphanumeric() || b == b'*' || b == b'#';
        while self.pos < self.text.len() && is_word_byte(self.text[self.pos]) {
            self.pos += 1;
        }
        if self.pos == start {
            return match self.text.get(start) {
                Some(&b) => Err(ParseError::UnexpectedChar {
                    pos: start,
                    found: b as char,
                }),
                None => Err(ParseError::UnexpectedEnd(start)),
            };
        }
        let name = std::str::from_utf8(&self.text[start..self.pos])
            .expect("ascii word")
            .to_string();
        constant_table()
            .iter()
            .find(|(n, _)| *n == name)
            .map(|&(_, g)| g)
            .ok_or(ParseError::UnknownConstant { pos: start, name })
    }
}

/// Parses a single game in bracket notation.
pub fn parse(text: &str) -> Result<Game, ParseError> {
    let mut parser = Parser {
        text: text.as_bytes(),
        pos: 0,
    };
    let game = parser.game()?;
    parser.skip_ws();
    if parser.pos != parser.text.len() {
        return Err(ParseError::TrailingInput(parser.pos));
    }
    Ok(game)
}

static RENDER_MEMO: LazyLock<DashMap<Game, Arc<str>>> = LazyLock::new(DashMap::new);

/// Canonical raw text, stable across processes: `parse(render(g)) == g`.
pub fn render(game: Game) -> String {
    render_key(game).to_string()
}

/// Memoized raw rendering, used as a structural sort key.
pub(crate) fn render_key(game: Game) -> Arc<str> {
    if let Some(s) = RENDER_MEMO.get(&game) {
        return s.clone();
    }
    let side = |options: &[Game]| {
        let mut rendered: Vec<(u32, Arc<str>)> =
            options.iter().map(|&g| (g.birthday(), render_key(g))).collect();
        rendered.sort();
        rendered
            .into_iter()
            .map(|(_, s)| s)
            .collect::<Vec<_>>()
            .join(",")
    };
    let text: Arc<str> = format!(
        "{{{}|{}}}",
        side(game.left_options()),
        side(game.right_options())
    )
    .into();
    RENDER_MEMO.insert(game, text.clone());
    text
}

static PRETTY_NAMES: LazyLock<HashMap<Game, &'static str>> = LazyLock::new(|| {
    let mut names = HashMap::new();
    for (name, game) in constant_table() {
        names.insert(game, name);
    }
    names.insert(constants::one_bar(), "~1");
    names.insert(constants::two_bar(), "~2");
    names.insert(constants::a_bar(), "~a");
    names
});

/// Abbreviated rendering: named constants are substituted inside the
/// top-level braces, empty option sets print as a dot. Still parseable.
pub fn render_pretty(game: Game) -> String {
    let side = |options: &[Game]| {
        if options.is_empty() {
            return ".".to_string();
        }
        let mut rendered: Vec<(u32, Arc<str>, String)> = options
            .iter()
            .map(|&g| (g.birthday(), render_key(g), pretty_atom(g)))
            .collect();
        rendered.sort();
        rendered
            .into_iter()
            .map(|(_, _, text)| text)
            .collect::<Vec<_>>()
            .join(",")
    };
    format!(
        "{{{}|{}}}",
        side(game.left_options()),
        side(game.right_options())
    )
}

fn pretty_atom(game: Game) -> String {
    match PRETTY_NAMES.get(&game) {
        Some(name) => name.to_string(),
        None => render_pretty(game),
    }
}

/// The constant name of a game, when it has one.
pub fn constant_name(game: Game) -> Option<&'static str> {
    PRETTY_NAMES.get(&game).copied()
}

impl std::fmt::Display for Game {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&render_key(*self))
    }
}

impl std::str::FromStr for Game {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

impl serde::Serialize for Game {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&render_key(*self))
    }
}

impl<'de> serde::Deserialize<'de> for Game {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        parse(&text).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{constants::*, sum};

    #[test]
    fn parse_constants_and_braces() {
        assert_eq!(parse("{|}").unwrap(), zero());
        assert_eq!(parse("{.|.}").unwrap(), zero());
        assert_eq!(parse("{0|0}").unwrap(), star());
        assert_eq!(parse("0").unwrap(), zero());
        assert_eq!(parse("*2").unwrap(), star2());
        assert_eq!(parse("2#20").unwrap(), two_sharp_two_zero());
        assert_eq!(parse("{.|{{0|.}|.}}").unwrap(), a());
        assert_eq!(parse("~1").unwrap(), one_bar());
        assert_eq!(parse("~a").unwrap(), a_bar());
        assert_eq!(parse(" { 0 , * | 0 } ").unwrap(), Game::make(&[zero(), star()], &[zero()]));
    }

    #[test]
    fn parse_errors_carry_positions() {
        assert_eq!(
            parse("{0|q}").unwrap_err(),
            ParseError::UnknownConstant {
                pos: 3,
                name: "q".into()
            }
        );
        assert_eq!(parse("{0|").unwrap_err(), ParseError::UnexpectedEnd(3));
        assert_eq!(parse("{|}}").unwrap_err(), ParseError::TrailingInput(3));
        assert!(matches!(
            parse("{0;|}").unwrap_err(),
            ParseError::UnexpectedChar { pos: 2, found: ';' }
        ));
    }

    #[test]
    fn render_raw_examples() {
        assert_eq!(render(zero()), "{|}");
        assert_eq!(render(one()), "{{|}|}");
        assert_eq!(render(star()), "{{|}|{|}}");
    }

    #[test]
    fn render_pretty_examples() {
        assert_eq!(render_pretty(star()), "{0|0}");
        assert_eq!(render_pretty(a()), "{.|2}");
        assert_eq!(render_pretty(two_sharp_two_zero()), "{0,*2,2#|0,*2,2#}");
        assert_eq!(render_pretty(Game::make(&[a_bar()], &[one_bar()])), "{~a|~1}");
    }

    #[test]
    fn round_trip_constants() {
        for g in [
            zero(),
            one(),
            one_bar(),
            two(),
            star(),
            star2(),
            two_sharp(),
            two_sharp_zero(),
            two_sharp_two_zero(),
            a(),
            a_bar(),
            sum(a(), one_bar()),
        ] {
            assert_eq!(parse(&render(g)).unwrap(), g, "raw round trip");
            assert_eq!(parse(&render_pretty(g)).unwrap(), g, "pretty round trip");
        }
    }

    #[test]
    fn render_is_structural_not_id_ordered() {
        // The two options are interned in different orders in other tests;
        // rendering must not depend on that.
        let g = Game::make(&[one(), one_bar()], &[]);
        let h = Game::make(&[one_bar(), one()], &[]);
        assert_eq!(g, h);
        assert_eq!(render(g), "{{{|}|},{|{|}}|}");
    }
}
