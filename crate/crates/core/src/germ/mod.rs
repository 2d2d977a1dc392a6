//! Defining-function expressions and their canonical germ models.

pub mod ast;
pub mod model;
pub mod parser;

pub use ast::{Expr, ExprAst};
pub use model::{germ_derivatives, to_germ, DerivOrder, Derivatives, Germ, Model, VarKind};
pub use parser::parse_expr;
