//! Expression language: tokenizer, parser, evaluator, JSON interchange and the CLI driver.

pub mod ast;
pub mod cli;
pub mod eval;
pub mod json;
pub mod token;
pub mod verify;

pub use ast::{parse, Expr};
pub use cli::{cli_run, cli_run_with, exit_code};
pub use json::{decode, Decoded};
pub use eval::{eval, eval_on_vacuum, required_qudits, Operator, Value};
pub use token::{tokenize, Symbol, Token, TokenKind};
pub use verify::{run_verify, CheckOutcome, Selection, Status, Suite, VerifyReport};
