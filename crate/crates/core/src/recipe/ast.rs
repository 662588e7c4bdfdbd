use std::fmt;

/// 1-based source position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

/// Bare-word flags accepted by `surface(...)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Flag {
    Spin,
    NonSpin,
    Kahler,
    NonKahler,
    SimplyConnected,
    NotSimplyConnected,
    Complex,
    NonComplex,
}

impl Flag {
    pub const ALL: [Flag; 8] = [
        Flag::Spin,
        Flag::NonSpin,
        Flag::Kahler,
        Flag::NonKahler,
        Flag::SimplyConnected,
        Flag::NotSimplyConnected,
        Flag::Complex,
        Flag::NonComplex,
    ];

    pub fn keyword(self) -> &'static str {
        match self {
            Flag::Spin => "spin",
            Flag::NonSpin => "nonspin",
            Flag::Kahler => "kahler",
            Flag::NonKahler => "nonkahler",
            Flag::SimplyConnected => "simply_connected",
            Flag::NotSimplyConnected => "not_simply_connected",
            Flag::Complex => "complex",
            Flag::NonComplex => "noncomplex",
        }
    }

    pub fn from_keyword(s: &str) -> Option<Flag> {
        Flag::ALL.into_iter().find(|f| f.keyword() == s)
    }
}

/// What an expression evaluates to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ValueType {
    Surface,
    ThreeFold,
}

impl fmt::Display for ValueType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ValueType::Surface => "surface",
            ValueType::ThreeFold => "3-fold",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExprKind<T> {
    SurfaceLiteral { name: String, chi: T, tau: T, flags: Vec<Flag> },
    CatalogSurface(T),
    ConnSumCp2bar(Box<Expr<T>>, T),
    Twistor(Box<Expr<T>>),
    ProjCanonical(Box<Expr<T>>),
    K3Family(T),
    Cp3Ac(T),
    BlowUp(Box<Expr<T>>, T),
    CorollaryFamily(T, T),
    Var(String),
}

/// An expression node. Equality ignores source positions.
#[derive(Debug, Clone)]
pub struct Expr<T> {
    pub kind: ExprKind<T>,
    pub pos: Pos,
}

impl<T: PartialEq> PartialEq for Expr<T> {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl<T: Eq> Eq for Expr<T> {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Stmt<T> {
    Let { name: String, expr: Expr<T> },
    Emit { expr: Expr<T> },
}

impl<T> Stmt<T> {
    pub fn expr(&self) -> &Expr<T> {
        match self {
            Stmt::Let { expr, .. } | Stmt::Emit { expr } => expr,
        }
    }
}

/// A parsed, type-checked recipe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Recipe<T> {
    pub stmts: Vec<Stmt<T>>,
}

impl<T> Recipe<T> {
    pub fn emits(&self) -> impl Iterator<Item = &Expr<T>> {
        self.stmts.iter().filter_map(|s| match s {
            Stmt::Emit { expr } => Some(expr),
            Stmt::Let { .. } => None,
        })
    }
}

fn write_str_literal(f: &mut fmt::Formatter<'_>, s: &str) -> fmt::Result {
    f.write_str("\"")?;
    for c in s.chars() {
        match c {
            '"' => f.write_str("\\\"")?,
            '\\' => f.write_str("\\\\")?,
            '\n' => f.write_str("\\n")?,
            c => write!(f, "{c}")?,
        }
    }
    f.write_str("\"")
}

impl<T: fmt::Display> fmt::Display for Expr<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ExprKind::SurfaceLiteral { name, chi, tau, flags } => {
                f.write_str("surface(")?;
                write_str_literal(f, name)?;
                write!(f, ", {chi}, {tau}")?;
                for flag in flags {
                    write!(f, ", {}", flag.keyword())?;
                }
                f.write_str(")")
            }
            ExprKind::CatalogSurface(m) => write!(f, "catalog({m})"),
            ExprKind::ConnSumCp2bar(s, k) => write!(f, "connsum_cp2bar({s}, {k})"),
            ExprKind::Twistor(s) => write!(f, "twistor({s})"),
            ExprKind::ProjCanonical(s) => write!(f, "proj_canonical({s})"),
            ExprKind::K3Family(m) => write!(f, "k3_family({m})"),
            ExprKind::Cp3Ac(j) => write!(f, "cp3_ac({j})"),
            ExprKind::BlowUp(x, l) => write!(f, "blowup({x}, {l})"),
            ExprKind::CorollaryFamily(m, n) => write!(f, "corollary({m}, {n})"),
            ExprKind::Var(name) => f.write_str(name),
        }
    }
}

impl<T: fmt::Display> fmt::Display for Stmt<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stmt::Let { name, expr } => write!(f, "let {name} = {expr}"),
            Stmt::Emit { expr } => write!(f, "emit {expr}"),
        }
    }
}

impl<T: fmt::Display> fmt::Display for Recipe<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for stmt in &self.stmts {
            writeln!(f, "{stmt}")?;
        }
        Ok(())
    }
}
