//! JSON game files and weight files.
//!
//! A game file declares `"players"` and exactly one of three encodings:
//!
//! ```json
//! {"players": ["A", "B"], "worths": {"A": 1, "B": 0, "A,B": "5/2"}}
//! {"players": ["A", "B"], "dividends": {"A,B": 1}}
//! {"players": ["A", "B"], "unanimity": [{"coalition": "A,B", "coefficient": 1}]}
//! ```
//!
//! `worths` must list every non-empty coalition; the sparse encodings
//! default missing coalitions to 0 and sum repeated unanimity terms.
//! Numbers may be JSON numbers (read exactly from their source text),
//! decimal strings or `"p/q"` strings.

use std::fmt;
use std::path::Path;

use num_traits::Zero;
use serde_json::{json, Map, Number, Value};

use crate::coalition::{self, Coalition};
use crate::error::{Error, Result};
use crate::game::{check_player_count, Game, PlayerLabeling};
use crate::group_values::SemivalueWeights;
use crate::rational::{self, Rational};
use crate::transforms::{dividends, game_from_dividends, DividendVector};

/// A parsed game together with its player labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GameFile {
    pub labels: PlayerLabeling,
    pub game: Game,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Encoding {
    Worths,
    Dividends,
    Unanimity,
}

impl Encoding {
    const KEYS: [&'static str; 3] = ["worths", "dividends", "unanimity"];

    fn key(self) -> &'static str {
        match self {
            Encoding::Worths => "worths",
            Encoding::Dividends => "dividends",
            Encoding::Unanimity => "unanimity",
        }
    }
}

impl fmt::Display for Encoding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

fn bad(msg: impl Into<String>) -> Error {
    Error::GameFile(msg.into())
}

/// Reads a JSON number or numeric string as an exact rational.
pub fn number_from_json(v: &Value) -> Result<Rational> {
    match v {
        Value::Number(n) => rational::parse(&n.to_string()),
        Value::String(s) => rational::parse(s),
        other => Err(Error::ParseNumber(other.to_string())),
    }
}

/// Integers become JSON numbers, everything else a `"p/q"` string.
pub fn number_to_json(r: &Rational) -> Value {
    let text = rational::to_fraction_string(r);
    if r.is_integer() {
        if let Ok(n) = text.parse::<Number>() {
            return Value::Number(n);
        }
    }
    Value::String(text)
}

fn coalition_key(labels: &PlayerLabeling, key: &str) -> Result<Coalition> {
    let c = labels.parse_coalition(key)?;
    if c.is_empty() {
        return Err(bad(format!("coalition {key:?} is empty")));
    }
    Ok(c)
}

/// Reads a `{coalition: number}` object, rejecting coalitions given twice
/// (for example `"A,B"` and `"B,A"`).
fn coalition_map(labels: &PlayerLabeling, obj: &Map<String, Value>, what: &str) -> Result<Vec<Rational>> {
    let mut values: Vec<Option<Rational>> = vec![None; 1 << labels.len()];
    for (key, v) in obj {
        let c = coalition_key(labels, key)?;
        let r = number_from_json(v).map_err(|e| bad(format!("{what} of {key:?}: {e}")))?;
        if values[c.index()].replace(r).is_some() {
            return Err(bad(format!("coalition {{{}}} is listed twice", labels.format_coalition(c))));
        }
    }
    Ok(values.into_iter().map(|v| v.unwrap_or_else(Rational::zero)).collect())
}

pub fn parse_game_file(text: &str) -> Result<GameFile> {
    let doc: Value = serde_json::from_str(text).map_err(|e| bad(format!("malformed JSON: {e}")))?;
    let obj = doc.as_object().ok_or_else(|| bad("top level must be an object"))?;
    if let Some(k) = obj.keys().find(|k| *k != "players" && !Encoding::KEYS.contains(&k.as_str())) {
        return Err(bad(format!("unknown field {k:?}")));
    }
    let players =
        obj.get("players").and_then(Value::as_array).ok_or_else(|| bad("\"players\" must be an array of labels"))?;
    let names = players
        .iter()
        .map(|p| p.as_str().map(str::to_string).ok_or_else(|| bad("player labels must be strings")))
        .collect::<Result<Vec<_>>>()?;
    check_player_count(names.len())?;
    let labels = PlayerLabeling::new(names)?;
    let n = labels.len();

    let present: Vec<&str> = Encoding::KEYS.into_iter().filter(|k| obj.contains_key(*k)).collect();
    let [key] = present.as_slice() else {
        return Err(bad("exactly one of \"worths\", \"dividends\" or \"unanimity\" is required"));
    };
    let body = &obj[*key];
    let game = match *key {
        "worths" => {
            let map = body.as_object().ok_or_else(|| bad("\"worths\" must be an object"))?;
            let worths = coalition_map(&labels, map, "worth")?;
            let listed: Vec<bool> = {
                let mut seen = vec![false; 1 << n];
                for k in map.keys() {
                    seen[coalition_key(&labels, k)?.index()] = true;
                }
                seen
            };
            if let Some(m) = (1..1usize << n).find(|&m| !listed[m]) {
                return Err(bad(format!(
                    "\"worths\" must list all {} non-empty coalitions; missing {{{}}}",
                    (1u64 << n) - 1,
                    labels.format_coalition(Coalition(m as u64))
                )));
            }
            Game::new(n, worths)?
        }
        "dividends" => {
            let map = body.as_object().ok_or_else(|| bad("\"dividends\" must be an object"))?;
            game_from_dividends(&DividendVector::new(n, coalition_map(&labels, map, "dividend")?)?)
        }
        _ => {
            let terms = body.as_array().ok_or_else(|| bad("\"unanimity\" must be an array"))?;
            let mut d = vec![Rational::zero(); 1 << n];
            for term in terms {
                let c = term
                    .get("coalition")
                    .and_then(Value::as_str)
                    .ok_or_else(|| bad("unanimity term needs a \"coalition\" string"))?;
                let k = term.get("coefficient").ok_or_else(|| bad("unanimity term needs a \"coefficient\""))?;
                d[coalition_key(&labels, c)?.index()] += number_from_json(k)?;
            }
            game_from_dividends(&DividendVector::new(n, d)?)
        }
    };
    Ok(GameFile { labels, game })
}

pub fn read_game_file(path: &Path) -> Result<GameFile> {
    let text = std::fs::read_to_string(path).map_err(|e| bad(format!("{}: {e}", path.display())))?;
    parse_game_file(&text)
}

/// Renders a game in the chosen encoding. Coalitions are listed by size,
/// then lexicographically by player; zero dividends are omitted.
pub fn game_file_json(game: &Game, labels: &PlayerLabeling, encoding: Encoding) -> Value {
    let order = coalition::by_size_then_players(game.n());
    let body = match encoding {
        Encoding::Worths => {
            Value::Object(order.iter().map(|&c| (labels.format_coalition(c), number_to_json(game.worth(c)))).collect())
        }
        Encoding::Dividends | Encoding::Unanimity => {
            let d = dividends(game);
            let support = order.iter().filter(|c| !d.get(**c).is_zero());
            if encoding == Encoding::Dividends {
                Value::Object(support.map(|&c| (labels.format_coalition(c), number_to_json(d.get(c)))).collect())
            } else {
                Value::Array(
                    support
                        .map(|&c| json!({"coalition": labels.format_coalition(c), "coefficient": number_to_json(d.get(c))}))
                        .collect(),
                )
            }
        }
    };
    let mut obj = Map::new();
    obj.insert("players".into(), json!(labels.labels()));
    obj.insert(encoding.key().into(), body);
    Value::Object(obj)
}

/// Parses `{"p": [[p(1,1)], [p(1,2), p(2,2)], ...]}`.
pub fn parse_weights(text: &str) -> Result<SemivalueWeights> {
    let doc: Value = serde_json::from_str(text).map_err(|e| Error::InvalidWeights(format!("malformed JSON: {e}")))?;
    let rows = doc
        .get("p")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::InvalidWeights("expected an object with a \"p\" array of rows".into()))?;
    let rows = rows
        .iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| Error::InvalidWeights("each row of \"p\" must be an array".into()))?
                .iter()
                .map(number_from_json)
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    SemivalueWeights::new(rows)
}

pub fn read_weights(path: &Path) -> Result<SemivalueWeights> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::InvalidWeights(format!("{}: {e}", path.display())))?;
    parse_weights(&text)
}
