//! Syntax tree of the script language.

use std::fmt;

/// Source position, 1-based. Positions do not take part in equality, so
/// trees compare structurally.
#[derive(Clone, Copy, Debug, Default)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl PartialEq for Pos {
    fn eq(&self, _: &Pos) -> bool {
        true
    }
}

impl Eq for Pos {}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(i64, Pos),
    Ratio(i64, i64, Pos),
    /// A name, field or group such as `A`, `Q`, `F2`, `Z^2*Z3`.
    Symbol(String, Pos),
    List(Vec<Expr>, Pos),
    Call(Call),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Call {
    pub head: String,
    pub args: Vec<Arg>,
    pub pos: Pos,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arg {
    pub key: Option<String>,
    pub value: Expr,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Stmt {
    Decl { name: String, value: Expr, pos: Pos },
    Cmd(Call),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Script {
    pub stmts: Vec<Stmt>,
}

impl Expr {
    pub fn pos(&self) -> Pos {
        match self {
            Expr::Int(_, p) | Expr::Ratio(_, _, p) | Expr::Symbol(_, p) | Expr::List(_, p) => *p,
            Expr::Call(c) => c.pos,
        }
    }
}

impl Script {
    pub fn declarations(&self) -> usize {
        self.stmts.iter().filter(|s| matches!(s, Stmt::Decl { .. })).count()
    }

    pub fn commands(&self) -> usize {
        self.stmts.len() - self.declarations()
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Int(n, _) => write!(f, "{n}"),
            Expr::Ratio(a, b, _) => write!(f, "{a}/{b}"),
            Expr::Symbol(s, _) => write!(f, "{s}"),
            Expr::List(xs, _) => {
                write!(f, "[")?;
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, "]")
            }
            Expr::Call(c) => write!(f, "{c}"),
        }
    }
}

impl fmt::Display for Call {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(", self.head)?;
        for (i, a) in self.args.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            if let Some(k) = &a.key {
                write!(f, "{k}=")?;
            }
            write!(f, "{}", a.value)?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for Stmt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stmt::Decl { name, value, .. } => write!(f, "{name} = {value}"),
            Stmt::Cmd(c) => write!(f, "{c}"),
        }
    }
}

impl fmt::Display for Script {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.stmts {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}
