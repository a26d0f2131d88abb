use std::collections::HashMap;

use serde_json::Value;

use crate::error::{Error, Result};
use crate::words::{Notation, Symbol, Word};

/// A deterministic adversary: the answer depends only on the visible word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Ben {
    /// Repeats the last symbol (0 on the empty word).
    Mimic,
    Constant(Symbol),
    /// `(|w| + offset) mod C`.
    Cycle { offset: usize },
    /// Completes the longest square of half at least 2 that one more symbol
    /// can finish; otherwise behaves like `Cycle`.
    GreedyThreat { offset: usize },
    Table(ScriptedTable),
}

/// Finite lookup from visible words to answers, with a fallback.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ScriptedTable {
    pub entries: HashMap<Vec<Symbol>, Symbol>,
    pub default: Symbol,
}

impl ScriptedTable {
    /// JSON object mapping word strings to symbols, plus a `"default"` key.
    /// Symbols are single display characters (`"3"`, `"c"`) or 0-based integers.
    pub fn from_json(text: &str, alphabet: usize) -> Result<Self> {
        let value: Value = serde_json::from_str(text).map_err(|e| Error::Parse {
            what: "scripted table",
            detail: e.to_string(),
        })?;
        let obj = value
            .as_object()
            .ok_or_else(|| Error::InvalidBen("scripted table must be a JSON object".into()))?;
        let mut table = ScriptedTable::default();
        let mut saw_default = false;
        for (key, v) in obj {
            let s = table_symbol(v, alphabet)?;
            if key == "default" {
                table.default = s;
                saw_default = true;
            } else {
                let w = Word::parse(key)?;
                table.entries.insert(w.into_symbols(), s);
            }
        }
        if !saw_default {
            return Err(Error::InvalidBen("scripted table needs a \"default\"".into()));
        }
        Ok(table)
    }

    pub fn to_json(&self) -> Result<String> {
        let mut obj = serde_json::Map::new();
        for (w, &s) in &self.entries {
            obj.insert(Word::from(w.as_slice()).to_text()?, Value::from(s));
        }
        obj.insert("default".into(), Value::from(self.default));
        Ok(Value::Object(obj).to_string())
    }
}

fn table_symbol(v: &Value, alphabet: usize) -> Result<Symbol> {
    let s = match v {
        Value::Number(n) => n.as_u64().map(|n| n as usize),
        Value::String(t) => {
            let mut chars = t.chars();
            match (chars.next(), chars.next()) {
                (Some(c), None) => Notation::Digits
                    .parse_symbol(c)
                    .or_else(|| Notation::Letters.parse_symbol(c))
                    .map(|s| s as usize),
                _ => None,
            }
        }
        _ => None,
    }
    .ok_or_else(|| Error::InvalidBen(format!("bad table symbol {v}")))?;
    if s >= alphabet {
        return Err(Error::InvalidBen(format!(
            "table symbol {s} outside alphabet of size {alphabet}"
        )));
    }
    Ok(s as Symbol)
}

impl Ben {
    pub fn respond(&self, w: &[Symbol], alphabet: usize) -> Symbol {
        match self {
            Ben::Mimic => w.last().copied().unwrap_or(0),
            Ben::Constant(k) => *k,
            Ben::Cycle { offset } => ((w.len() + offset) % alphabet) as Symbol,
            Ben::GreedyThreat { offset } => threat_symbol(w)
                .unwrap_or(((w.len() + offset) % alphabet) as Symbol),
            Ben::Table(t) => t.entries.get(w).copied().unwrap_or(t.default),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Ben::Mimic => "mimic",
            Ben::Constant(_) => "constant",
            Ben::Cycle { .. } => "cycle",
            Ben::GreedyThreat { .. } => "greedy-threat",
            Ben::Table(_) => "scripted-table",
        }
    }

    /// The parameter-free built-in adversaries used for fuzzing.
    pub fn builtins() -> Vec<Ben> {
        vec![
            Ben::Mimic,
            Ben::Constant(0),
            Ben::Cycle { offset: 0 },
            Ben::GreedyThreat { offset: 0 },
        ]
    }
}

/// The symbol completing the longest square of half `>= 2` after one more
/// append: largest `h` with `w[n-h+1..] == w[n-2h+1..n-h]`, answering `w[n-h]`.
fn threat_symbol(w: &[Symbol]) -> Option<Symbol> {
    let n = w.len();
    (2..=n.div_ceil(2))
        .rev()
        .find(|&h| w[n + 1 - h..] == w[n + 1 - 2 * h..n - h])
        .map(|h| w[n - h])
}

/// Builds an adversary by name. `param` is the constant symbol (0-based),
/// the cycle offset, or the JSON table for `scripted-table`.
pub fn make_ben(name: &str, param: Option<&str>, alphabet: usize) -> Result<Ben> {
    let number = |default: usize| -> Result<usize> {
        param.map_or(Ok(default), |p| {
            p.trim()
                .parse()
                .map_err(|_| Error::InvalidBen(format!("expected a number, got {p:?}")))
        })
    };
    match name {
        "mimic" => Ok(Ben::Mimic),
        "constant" => {
            let k = number(0)?;
            if k >= alphabet {
                return Err(Error::InvalidBen(format!(
                    "constant {k} outside alphabet of size {alphabet}"
                )));
            }
            Ok(Ben::Constant(k as Symbol))
        }
        "cycle" => Ok(Ben::Cycle { offset: number(0)? }),
        "greedy-threat" => Ok(Ben::GreedyThreat { offset: number(0)? }),
        "scripted-table" => {
            let text = param.ok_or_else(|| Error::InvalidBen("scripted-table needs a table".into()))?;
            ScriptedTable::from_json(text, alphabet).map(Ben::Table)
        }
        other => Err(Error::UnknownBen(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Vec<Symbol> {
        Word::parse(s).unwrap().into_symbols()
    }

    #[test]
    fn builtin_answers() {
        assert_eq!(Ben::Mimic.respond(&w("ab"), 6), 1);
        assert_eq!(Ben::Mimic.respond(&[], 6), 0);
        assert_eq!(Ben::Cycle { offset: 0 }.respond(&[], 6), 0);
        assert_eq!(Ben::Cycle { offset: 2 }.respond(&w("abcde"), 6), 1);
        assert_eq!(Ben::Constant(4).respond(&w("ab"), 6), 4);
    }

    #[test]
    fn greedy_threat_completes_longest_square() {
        let g = Ben::GreedyThreat { offset: 0 };
        assert_eq!(g.respond(&w("abcab"), 6), 2);
        // "aba" -> "abab" (half 2)
        assert_eq!(g.respond(&w("aba"), 6), 1);
        // Nothing to complete: falls back to cycling.
        assert_eq!(g.respond(&w("abc"), 6), 3);
        assert_eq!(g.respond(&[], 6), 0);
    }

    #[test]
    fn scripted_table_lookup() {
        let t = make_ben(
            "scripted-table",
            Some(r#"{"": "c", "ab": 4, "default": "a"}"#),
            6,
        )
        .unwrap();
        assert_eq!(t.respond(&[], 6), 2);
        assert_eq!(t.respond(&w("ab"), 6), 4);
        assert_eq!(t.respond(&w("abc"), 6), 0);
        if let Ben::Table(table) = &t {
            let again = ScriptedTable::from_json(&table.to_json().unwrap(), 6).unwrap();
            assert_eq!(&again, table);
        }
    }

    #[test]
    fn make_ben_errors() {
        assert!(matches!(make_ben("oracle", None, 6), Err(Error::UnknownBen(_))));
        assert!(make_ben("constant", Some("6"), 6).is_err());
        assert!(make_ben("scripted-table", Some(r#"{"a": 9, "default": 0}"#), 6).is_err());
        assert!(make_ben("scripted-table", Some(r#"{"a": 1}"#), 6).is_err());
        assert_eq!(make_ben("cycle", Some("3"), 6), Ok(Ben::Cycle { offset: 3 }));
    }
}
