//! A game played one adversary move at a time.
//!
//! The session owns Ann's seeded strategy. Each call to
//! [`GameSession::apply_ben`] plays the adversary's symbol and then, if the
//! game is still on, Ann's reply. Driven with the moves a [`Ben`] would
//! make, a session reproduces the batch game functions move for move.
//!
//! [`Ben`]: crate::games::Ben

use std::fmt;
use std::str::FromStr;

use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::games::{
    ann_erase_move, ann_nonrep_move, Board, GameTrace, MoveRecord, Mover, RandomAnn,
    ScriptedTable,
};
use crate::words::{Repetition, Symbol, Word, MAX_DISPLAY_ALPHABET};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SessionKind {
    Erase,
    Nonrep,
}

impl SessionKind {
    pub fn name(self) -> &'static str {
        match self {
            SessionKind::Erase => "erase",
            SessionKind::Nonrep => "nonrep",
        }
    }
}

impl fmt::Display for SessionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SessionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "erase" => Ok(SessionKind::Erase),
            "nonrep" => Ok(SessionKind::Nonrep),
            _ => Err(Error::Parse {
                what: "game kind",
                detail: format!("{s:?} is not erase or nonrep"),
            }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SessionStatus {
    Live,
    AnnWon,
    BenWon,
    Exhausted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SessionConfig {
    pub kind: SessionKind,
    #[serde(rename = "c")]
    pub alphabet: usize,
    pub seed: u64,
    pub target_n: usize,
    /// Total move limit; only erase sessions can run out.
    #[serde(default = "default_move_budget")]
    pub move_budget: usize,
}

fn default_move_budget() -> usize {
    100_000
}

impl SessionConfig {
    pub fn new(kind: SessionKind, alphabet: usize, seed: u64, target_n: usize) -> Self {
        Self {
            kind,
            alphabet,
            seed,
            target_n,
            move_budget: default_move_budget(),
        }
    }
}

/// What a client sees after every request.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SessionState {
    pub kind: SessionKind,
    pub c: usize,
    pub seed: u64,
    pub target_n: usize,
    /// Current word, 0-based symbols.
    pub symbols: Vec<Symbol>,
    /// Current word in display notation.
    pub word: Word,
    pub move_number: usize,
    pub status: SessionStatus,
    /// `Some("ben")` while the session waits for the adversary.
    pub to_move: Option<Mover>,
    /// The square that ended a nonrep session.
    pub repetition: Option<Repetition>,
}

/// Everything needed to replay or decode a session offline.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SessionTrace {
    pub config: SessionConfig,
    pub moves: Vec<MoveRecord>,
    pub word: Word,
    pub status: SessionStatus,
    pub repetition: Option<Repetition>,
}

impl SessionTrace {
    pub fn ben_moves(&self) -> Vec<Symbol> {
        self.moves
            .iter()
            .filter(|m| m.mover == Mover::Ben)
            .map(|m| m.symbol)
            .collect()
    }

    /// The adversary's moves as a lookup table keyed by the word it saw.
    /// Fails if the same word was answered in two different ways.
    pub fn ben_table(&self) -> Result<ScriptedTable> {
        let mut table = ScriptedTable::default();
        let mut board = Board::default();
        for m in &self.moves {
            if m.mover == Mover::Ben {
                let seen = board.symbols().to_vec();
                if let Some(&prev) = table.entries.get(&seen) {
                    if prev != m.symbol {
                        return Err(Error::MalformedTrace(format!(
                            "the adversary answered {} and {} to the same word",
                            prev, m.symbol
                        )));
                    }
                }
                table.entries.insert(seen, m.symbol);
            }
            match self.config.kind {
                SessionKind::Erase => board.append(m.symbol, 1, true),
                SessionKind::Nonrep => board.append(m.symbol, 2, false),
            };
        }
        Ok(table)
    }

    pub fn game_trace(&self) -> GameTrace {
        GameTrace {
            alphabet: self.config.alphabet,
            moves: self.moves.clone(),
            word: self.word.clone(),
            multiple_suffix_squares: 0,
        }
    }
}

pub struct GameSession {
    config: SessionConfig,
    board: Board,
    ann: RandomAnn<ChaCha8Rng>,
    moves: Vec<MoveRecord>,
    status: SessionStatus,
    repetition: Option<Repetition>,
}

impl fmt::Debug for GameSession {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GameSession")
            .field("config", &self.config)
            .field("word", &self.board.symbols())
            .field("status", &self.status)
            .finish()
    }
}

impl GameSession {
    /// Creates the session and plays Ann's opening move.
    pub fn new(config: SessionConfig) -> Result<Self> {
        // States carry the word in display notation.
        if config.alphabet == 0 || config.alphabet > MAX_DISPLAY_ALPHABET {
            return Err(Error::InvalidArgument(format!(
                "bad alphabet size {}",
                config.alphabet
            )));
        }
        if config.kind == SessionKind::Nonrep && config.alphabet < 2 {
            return Err(Error::InvalidArgument("nonrep sessions need c >= 2".into()));
        }
        let mut session = Self {
            config,
            board: Board::default(),
            ann: RandomAnn::seeded(config.seed),
            moves: Vec::new(),
            status: SessionStatus::Live,
            repetition: None,
        };
        session.update_status();
        if session.status == SessionStatus::Live {
            session.play_ann()?;
        }
        Ok(session)
    }

    pub fn config(&self) -> &SessionConfig {
        &self.config
    }

    pub fn status(&self) -> SessionStatus {
        self.status
    }

    pub fn moves(&self) -> &[MoveRecord] {
        &self.moves
    }

    pub fn symbols(&self) -> &[Symbol] {
        self.board.symbols()
    }

    /// Plays the adversary's `symbol`, then Ann's reply if the game goes
    /// on. Returns the moves appended by this call.
    pub fn apply_ben(&mut self, symbol: usize) -> Result<Vec<MoveRecord>> {
        if self.status != SessionStatus::Live {
            return Err(Error::InvalidArgument(format!(
                "session is over ({:?})",
                self.status
            )));
        }
        if symbol >= self.config.alphabet {
            return Err(Error::SymbolOutOfRange {
                symbol,
                size: self.config.alphabet,
            });
        }
        let before = self.moves.len();
        self.play(Mover::Ben, symbol as Symbol);
        if self.status == SessionStatus::Live {
            self.play_ann()?;
        }
        Ok(self.moves[before..].to_vec())
    }

    fn play_ann(&mut self) -> Result<()> {
        let (w, c) = (self.board.symbols(), self.config.alphabet);
        let s = match self.config.kind {
            SessionKind::Erase => ann_erase_move(w, c, &mut self.ann)?,
            SessionKind::Nonrep => ann_nonrep_move(w, c, &mut self.ann)?,
        };
        self.play(Mover::Ann, s);
        Ok(())
    }

    fn play(&mut self, mover: Mover, symbol: Symbol) {
        let rep = match self.config.kind {
            SessionKind::Erase => self.board.append(symbol, 1, true),
            SessionKind::Nonrep => self.board.append(symbol, 2, false),
        };
        self.moves.push(MoveRecord {
            mover,
            symbol,
            erased: rep.map_or(0, |r| r.half),
            height: self.board.len(),
        });
        if self.config.kind == SessionKind::Nonrep {
            self.repetition = rep;
        }
        self.update_status();
    }

    fn update_status(&mut self) {
        self.status = if self.repetition.is_some() {
            SessionStatus::BenWon
        } else if self.board.len() >= self.config.target_n {
            SessionStatus::AnnWon
        } else if self.config.kind == SessionKind::Erase && self.moves.len() >= self.config.move_budget
        {
            SessionStatus::Exhausted
        } else {
            SessionStatus::Live
        };
    }

    pub fn state(&self) -> SessionState {
        let symbols = self.board.symbols().to_vec();
        SessionState {
            kind: self.config.kind,
            c: self.config.alphabet,
            seed: self.config.seed,
            target_n: self.config.target_n,
            word: Word::from(symbols.clone()),
            symbols,
            move_number: self.moves.len(),
            status: self.status,
            to_move: (self.status == SessionStatus::Live).then_some(Mover::Ben),
            repetition: self.repetition,
        }
    }

    pub fn trace(&self) -> SessionTrace {
        SessionTrace {
            config: self.config,
            moves: self.moves.clone(),
            word: Word::from(self.board.symbols().to_vec()),
            status: self.status,
            repetition: self.repetition,
        }
    }
}
