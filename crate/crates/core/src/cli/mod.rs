//! Command-line surface: word syntax, JSON loaders and command dispatch.

mod command;
mod load;
mod selftest;
mod syntax;

pub use command::{run_command, wants_json, CommandResult};
pub use load::{load_relation, load_sequence, load_tree, load_vec, LoadError};
pub use selftest::{run_selftest, SelftestReport};
pub use syntax::{
    format_letters, format_word, format_xword, parse_word, AnyLetter, EvalError, SyntaxError,
    WordExpr,
};
