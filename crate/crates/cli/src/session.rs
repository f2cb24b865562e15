//! Evaluation of scripts: declarations build algebras and modules, commands
//! produce reports.

use std::collections::HashMap;
use std::str::FromStr;

use gradedk_core::algebra::GradedAlgebra;
use gradedk_core::error::Error;
use gradedk_core::field::{Field, Scalar};
use gradedk_core::filtration::{filtration_report, nakayama_report, swan_report};
use gradedk_core::gmod::{HomMatrix, ProjectivePresentation};
use gradedk_core::grading::{Degree, GradingGroup};
use gradedk_core::ktheory::{
    corollary_check, dade_check, k0, k0_report, lemma_check, quillen_case, theorem1_check, Report,
};

use crate::ast::{Arg, Call, Expr, Pos, Script, Stmt};
use crate::CliError;

pub const COMMANDS: &[&str] = &[
    "k0",
    "dade",
    "quillen",
    "theorem1",
    "corollary",
    "lemma",
    "swan",
    "filtration",
    "nakayama",
];

#[derive(Clone, Debug, Default)]
pub struct Options {
    pub seed: u64,
    pub degree_bound: Option<i64>,
    pub field: Option<Field>,
}

#[derive(Clone, Debug)]
pub enum Value {
    Int(i64),
    Field(Field),
    Group(GradingGroup),
    Algebra(GradedAlgebra),
    Module(ProjectivePresentation),
}

impl Value {
    fn kind(&self) -> &'static str {
        match self {
            Value::Int(_) => "integer",
            Value::Field(_) => "field",
            Value::Group(_) => "grading group",
            Value::Algebra(_) => "algebra",
            Value::Module(_) => "module",
        }
    }
}

fn arity(pos: Pos, msg: impl Into<String>) -> CliError {
    CliError::Arity {
        line: pos.line,
        col: pos.col,
        msg: msg.into(),
    }
}

fn core(pos: Pos) -> impl Fn(Error) -> CliError {
    move |source| CliError::Core {
        line: pos.line,
        col: pos.col,
        source,
    }
}

/// Positional and keyword arguments of one call.
struct Args<'a> {
    call: &'a Call,
    positional: Vec<&'a Expr>,
    keyword: Vec<(&'a str, &'a Expr)>,
}

impl<'a> Args<'a> {
    fn new(call: &'a Call, allowed: &[&str], min: usize, max: usize) -> Result<Args<'a>, CliError> {
        let mut positional = Vec::new();
        let mut keyword = Vec::new();
        for Arg { key, value } in &call.args {
            match key {
                None if keyword.is_empty() => positional.push(value),
                None => return Err(arity(value.pos(), "positional argument after keyword argument")),
                Some(k) if allowed.contains(&k.as_str()) => {
                    if keyword.iter().any(|(kk, _)| kk == k) {
                        return Err(arity(value.pos(), format!("`{k}` given twice")));
                    }
                    keyword.push((k.as_str(), value));
                }
                Some(k) => return Err(arity(value.pos(), format!("`{}` has no argument `{k}`", call.head))),
            }
        }
        let given = positional.len() + keyword.len();
        if given < min || given > max {
            let want = if min == max { format!("{min}") } else { format!("{min} to {max}") };
            return Err(arity(call.pos, format!("`{}` takes {want} arguments, got {given}", call.head)));
        }
        Ok(Args {
            call,
            positional,
            keyword,
        })
    }

    /// Argument `i`, by position or by keyword.
    fn get(&self, i: usize, key: &str) -> Option<&'a Expr> {
        self.positional
            .get(i)
            .copied()
            .or_else(|| self.keyword.iter().find(|(k, _)| *k == key).map(|(_, e)| *e))
    }

    fn req(&self, i: usize, key: &str) -> Result<&'a Expr, CliError> {
        self.get(i, key)
            .ok_or_else(|| arity(self.call.pos, format!("`{}` needs argument `{key}`", self.call.head)))
    }
}

pub struct Session {
    pub options: Options,
    env: HashMap<String, Value>,
    last: Option<String>,
}

impl Session {
    pub fn new(options: Options) -> Session {
        Session {
            options,
            env: HashMap::new(),
            last: None,
        }
    }

    pub fn get(&self, name: &str) -> Option<&Value> {
        self.env.get(name)
    }

    /// Name of the most recent declaration.
    pub fn last_declared(&self) -> Option<&str> {
        self.last.as_deref()
    }

    pub fn declare(&mut self, name: &str, value: &Expr) -> Result<(), CliError> {
        let v = self.eval(value)?;
        self.env.insert(name.to_string(), v);
        self.last = Some(name.to_string());
        Ok(())
    }

    /// Run every statement in order; the reports of the commands, or the
    /// first error together with the reports produced before it.
    pub fn run(&mut self, script: &Script) -> Result<Vec<Report>, (Vec<Report>, CliError)> {
        let mut reports = Vec::new();
        for stmt in &script.stmts {
            let step = match stmt {
                Stmt::Decl { name, value, .. } => self.declare(name, value).map(|_| None),
                Stmt::Cmd(c) => self.command(c).map(Some),
            };
            match step {
                Ok(Some(r)) => reports.push(r),
                Ok(None) => {}
                Err(e) => return Err((reports, e)),
            }
        }
        Ok(reports)
    }

    /// Evaluate only the declarations.
    pub fn declare_all(&mut self, script: &Script) -> Result<(), CliError> {
        for stmt in &script.stmts {
            if let Stmt::Decl { name, value, .. } = stmt {
                self.declare(name, value)?;
            }
        }
        Ok(())
    }

    pub fn command(&self, call: &Call) -> Result<Report, CliError> {
        let seed = self.options.seed;
        let radius = self.options.degree_bound;
        let pos = call.pos;
        let mut report = match call.head.as_str() {
            "k0" | "dade" | "quillen" | "theorem1" => {
                let a = Args::new(call, &["algebra"], 1, 1)?;
                let alg = self.algebra(a.req(0, "algebra")?)?;
                match call.head.as_str() {
                    "k0" => k0_report(&alg, seed, radius),
                    "dade" => dade_check(&alg, seed, radius),
                    "quillen" => quillen_case(&alg, seed, radius),
                    _ => theorem1_check(&alg, seed, radius),
                }
                .map_err(core(pos))?
            }
            "corollary" => {
                let a = Args::new(call, &["algebra", "m"], 1, 2)?;
                let alg = self.algebra(a.req(0, "algebra")?)?;
                let m = match a.get(1, "m") {
                    Some(e) => Some(self.usize(e)?),
                    None => None,
                };
                corollary_check(&alg, m, seed, radius).map_err(core(pos))?
            }
            "lemma" => {
                let a = Args::new(call, &["algebra", "group"], 2, 2)?;
                let alg = self.algebra(a.req(0, "algebra")?)?;
                let gamma = self.group(a.req(1, "group")?)?;
                lemma_check(&alg, &gamma, seed, radius).map_err(core(pos))?
            }
            "swan" | "filtration" | "nakayama" => {
                let a = Args::new(call, &["module"], 1, 1)?;
                let p = self.module(a.req(0, "module")?)?;
                match call.head.as_str() {
                    "swan" => swan_report(&p, seed, radius),
                    "nakayama" => nakayama_report(&p, seed, radius),
                    _ => {
                        let alg = p.algebra();
                        let positive = alg.group().rank() >= 1 && alg.nonnegative_in(0);
                        let k = if positive { Some(k0(alg, seed).map_err(core(pos))?) } else { None };
                        filtration_report(&p, k.as_ref(), seed, radius)
                    }
                }
                .map_err(core(pos))?
            }
            other => {
                return Err(CliError::Undefined {
                    line: pos.line,
                    col: pos.col,
                    name: other.to_string(),
                })
            }
        };
        report.command = call.to_string();
        Ok(report)
    }

    pub fn eval(&self, e: &Expr) -> Result<Value, CliError> {
        match e {
            Expr::Int(n, _) => Ok(Value::Int(*n)),
            Expr::Ratio(_, _, p) => Err(arity(*p, "a fraction is only allowed as a coefficient")),
            Expr::List(_, p) => Err(arity(*p, "a list is only allowed as a degree or coefficient list")),
            Expr::Symbol(s, p) => {
                if let Some(v) = self.env.get(s) {
                    return Ok(v.clone());
                }
                if let Ok(f) = Field::parse(s) {
                    return Ok(Value::Field(self.options.field.unwrap_or(f)));
                }
                if let Ok(g) = GradingGroup::from_str(s) {
                    return Ok(Value::Group(g));
                }
                Err(CliError::Undefined {
                    line: p.line,
                    col: p.col,
                    name: s.clone(),
                })
            }
            Expr::Call(c) => self.construct(c),
        }
    }

    fn construct(&self, c: &Call) -> Result<Value, CliError> {
        let pos = c.pos;
        let err = core(pos);
        Ok(match c.head.as_str() {
            "matrix" | "triangular" => {
                let a = Args::new(c, &["field", "shifts", "group"], 2, 3)?;
                let field = self.field(a.req(0, "field")?)?;
                let shifts_expr = a.req(1, "shifts")?;
                let group = match a.get(2, "group") {
                    Some(g) => self.group(g)?,
                    None => infer_group(shifts_expr)?,
                };
                let shifts = self.degrees(shifts_expr, &group)?;
                let alg = if c.head == "matrix" {
                    GradedAlgebra::matrix(field, group, shifts)
                } else {
                    GradedAlgebra::triangular(field, group, shifts)
                };
                Value::Algebra(alg.map_err(err)?)
            }
            "poly" => {
                let a = Args::new(c, &["base", "deg"], 2, 2)?;
                let base = self.algebra(a.req(0, "base")?)?;
                let deg = self.int_list(a.req(1, "deg")?)?;
                Value::Algebra(GradedAlgebra::poly(&base, &deg).map_err(err)?)
            }
            "groupalg" => {
                let a = Args::new(c, &["field", "group"], 2, 2)?;
                let field = self.field(a.req(0, "field")?)?;
                let group = self.group(a.req(1, "group")?)?;
                Value::Algebra(GradedAlgebra::group_algebra(field, group))
            }
            "tensor" | "product" => {
                let a = Args::new(c, &[], 2, 2)?;
                let x = self.algebra(a.req(0, "left")?)?;
                let y = self.algebra(a.req(1, "right")?)?;
                let alg = if c.head == "tensor" {
                    GradedAlgebra::tensor(&x, &y)
                } else {
                    GradedAlgebra::product(&x, &y)
                };
                Value::Algebra(alg.map_err(err)?)
            }
            "zero_part" | "forget" => {
                let a = Args::new(c, &["algebra"], 1, 1)?;
                let x = self.algebra(a.req(0, "algebra")?)?;
                let alg = if c.head == "zero_part" { x.zero_part() } else { x.forget_grading() };
                Value::Algebra(alg.map_err(err)?)
            }
            "extend" => {
                let a = Args::new(c, &["algebra", "group"], 2, 2)?;
                let x = self.algebra(a.req(0, "algebra")?)?;
                let g = self.group(a.req(1, "group")?)?;
                Value::Algebra(x.extend_trivially(&g).map_err(err)?)
            }
            "free" => {
                let a = Args::new(c, &["algebra", "shifts"], 1, 2)?;
                let x = self.algebra(a.req(0, "algebra")?)?;
                let shifts = match a.get(1, "shifts") {
                    Some(s) => self.degrees(s, x.group())?,
                    None => vec![x.group().zero()],
                };
                Value::Module(ProjectivePresentation::free(&x, shifts))
            }
            "proj" => {
                let a = Args::new(c, &["algebra", "shifts", "idem"], 3, 3)?;
                let x = self.algebra(a.req(0, "algebra")?)?;
                let shifts = self.degrees(a.req(1, "shifts")?, x.group())?;
                let idem = self.idempotent(a.req(2, "idem")?, &x, &shifts)?;
                Value::Module(ProjectivePresentation::new(&x, shifts, idem).map_err(err)?)
            }
            "shift" => {
                let a = Args::new(c, &["module", "by"], 2, 2)?;
                let p = self.module(a.req(0, "module")?)?;
                let d = self.degree(a.req(1, "by")?, p.algebra().group())?;
                Value::Module(p.shift(&d))
            }
            "sum" => {
                let a = Args::new(c, &[], 2, 2)?;
                let p = self.module(a.req(0, "left")?)?;
                let q = self.module(a.req(1, "right")?)?;
                Value::Module(p.direct_sum(&q).map_err(err)?)
            }
            other if COMMANDS.contains(&other) => {
                return Err(arity(pos, format!("`{other}` is a command, not a value")));
            }
            other => {
                return Err(CliError::Undefined {
                    line: pos.line,
                    col: pos.col,
                    name: other.to_string(),
                })
            }
        })
    }

    fn expect_kind(&self, e: &Expr, want: &str) -> CliError {
        let got = self.eval(e).map(|v| v.kind()).unwrap_or("expression");
        arity(e.pos(), format!("expected {want}, found {got} `{e}`"))
    }

    fn algebra(&self, e: &Expr) -> Result<GradedAlgebra, CliError> {
        match self.eval(e)? {
            Value::Algebra(a) => Ok(a),
            Value::Field(f) => Ok(GradedAlgebra::base_field(f)),
            _ => Err(self.expect_kind(e, "an algebra")),
        }
    }

    fn module(&self, e: &Expr) -> Result<ProjectivePresentation, CliError> {
        match self.eval(e)? {
            Value::Module(p) => Ok(p),
            _ => Err(self.expect_kind(e, "a module")),
        }
    }

    fn field(&self, e: &Expr) -> Result<Field, CliError> {
        match self.eval(e)? {
            Value::Field(f) => Ok(f),
            _ => Err(self.expect_kind(e, "a field")),
        }
    }

    fn group(&self, e: &Expr) -> Result<GradingGroup, CliError> {
        match self.eval(e)? {
            Value::Group(g) => Ok(g),
            Value::Int(1) => Ok(GradingGroup::trivial()),
            _ => Err(self.expect_kind(e, "a grading group")),
        }
    }

    fn usize(&self, e: &Expr) -> Result<usize, CliError> {
        match e {
            Expr::Int(n, _) if *n >= 0 => Ok(*n as usize),
            _ => Err(arity(e.pos(), format!("expected a nonnegative integer, found `{e}`"))),
        }
    }

    fn int_list(&self, e: &Expr) -> Result<Vec<i64>, CliError> {
        match e {
            Expr::Int(n, _) => Ok(vec![*n]),
            Expr::List(xs, _) => xs
                .iter()
                .map(|x| match x {
                    Expr::Int(n, _) => Ok(*n),
                    _ => Err(arity(x.pos(), format!("expected an integer, found `{x}`"))),
                })
                .collect(),
            _ => Err(arity(e.pos(), format!("expected an integer list, found `{e}`"))),
        }
    }

    fn degree(&self, e: &Expr, g: &GradingGroup) -> Result<Degree, CliError> {
        let flat = self.int_list(e)?;
        g.degree_from_flat(&flat).map_err(|_| {
            arity(
                e.pos(),
                format!("degree `{e}` has {} entries, {g} needs {}", flat.len(), g.ngens()),
            )
        })
    }

    fn degrees(&self, e: &Expr, g: &GradingGroup) -> Result<Vec<Degree>, CliError> {
        match e {
            Expr::List(xs, _) => xs.iter().map(|x| self.degree(x, g)).collect(),
            _ => Err(arity(e.pos(), format!("expected a list of degrees, found `{e}`"))),
        }
    }

    fn scalar(&self, e: &Expr, field: Field) -> Result<Scalar, CliError> {
        match e {
            Expr::Int(n, p) => field.from_ratio(*n, 1).map_err(core(*p)),
            Expr::Ratio(a, b, p) => field.from_ratio(*a, *b).map_err(core(*p)),
            _ => Err(arity(e.pos(), format!("expected a coefficient, found `{e}`"))),
        }
    }

    /// Entries are `0` or the coefficient list of a homogeneous element in
    /// the basis of `A_(s_i - s_j)`.
    fn idempotent(&self, e: &Expr, alg: &GradedAlgebra, shifts: &[Degree]) -> Result<HomMatrix, CliError> {
        let n = shifts.len();
        let rows = match e {
            Expr::List(rows, _) if rows.len() == n => rows,
            _ => return Err(arity(e.pos(), format!("idem must be a {n} x {n} matrix"))),
        };
        let g = alg.group();
        let mut coeffs = Vec::with_capacity(n);
        for (i, row) in rows.iter().enumerate() {
            let entries = match row {
                Expr::List(es, _) if es.len() == n => es,
                _ => return Err(arity(row.pos(), format!("row {i} of idem must have {n} entries"))),
            };
            let mut out_row = Vec::with_capacity(n);
            for (j, entry) in entries.iter().enumerate() {
                let dim = alg.component_dim(&g.sub(&shifts[i], &shifts[j]));
                let v = match entry {
                    Expr::Int(0, _) => vec![alg.field().zero(); dim],
                    Expr::List(cs, _) if cs.len() == dim => {
                        cs.iter().map(|x| self.scalar(x, alg.field())).collect::<Result<_, _>>()?
                    }
                    Expr::List(cs, p) => {
                        return Err(arity(
                            *p,
                            format!("entry ({i},{j}) has {} coefficients, its component has dimension {dim}", cs.len()),
                        ))
                    }
                    _ => return Err(arity(entry.pos(), format!("entry ({i},{j}) must be 0 or a coefficient list"))),
                };
                out_row.push(v);
            }
            coeffs.push(out_row);
        }
        HomMatrix::from_coefficients(alg, shifts, shifts, coeffs).map_err(core(e.pos()))
    }
}

/// `Z^k` when every shift is a list of `k` integers, `Z` for plain integers.
fn infer_group(e: &Expr) -> Result<GradingGroup, CliError> {
    let Expr::List(xs, _) = e else {
        return Err(arity(e.pos(), format!("expected a list of degrees, found `{e}`")));
    };
    let lens: Vec<usize> = xs
        .iter()
        .map(|x| match x {
            Expr::List(ys, _) => ys.len(),
            _ => 1,
        })
        .collect();
    match lens.first() {
        None => Ok(GradingGroup::integers()),
        Some(&k) if lens.iter().all(|&l| l == k) => GradingGroup::new(k, vec![]).map_err(core(e.pos())),
        _ => Err(arity(e.pos(), "shifts have different lengths; give group=...")),
    }
}
