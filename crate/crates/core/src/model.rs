//! Soft constraint instances, assignments and their evaluation.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::evaluation::Evaluation;
use crate::interval::GeneralizedInterval;
use crate::table::{BinaryTable, UnaryTable};

/// Index of a variable within its instance, in declaration order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarId(pub usize);

impl VarId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Ordered scope of a constraint. Repeats such as `<z, z>` are allowed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scope {
    Unary(VarId),
    Binary(VarId, VarId),
}

impl Scope {
    pub fn vars(&self) -> impl Iterator<Item = VarId> {
        let (a, b) = match *self {
            Scope::Unary(v) => (v, None),
            Scope::Binary(v, w) => (v, Some(w)),
        };
        std::iter::once(a).chain(b)
    }

    pub fn arity(&self) -> usize {
        match self {
            Scope::Unary(_) => 1,
            Scope::Binary(..) => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ConstraintFunction {
    Unary(UnaryTable),
    Binary(BinaryTable),
    Interval(GeneralizedInterval),
}

impl ConstraintFunction {
    pub fn arity(&self) -> usize {
        match self {
            ConstraintFunction::Unary(_) => 1,
            _ => 2,
        }
    }
}

/// A scoped evaluation function. Construct through [`SoftConstraint::unary`],
/// [`SoftConstraint::binary`] or [`SoftConstraint::interval`] so that arity and
/// scope always agree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SoftConstraint {
    scope: Scope,
    function: ConstraintFunction,
}

impl SoftConstraint {
    pub fn unary(v: VarId, table: UnaryTable) -> Self {
        SoftConstraint {
            scope: Scope::Unary(v),
            function: ConstraintFunction::Unary(table),
        }
    }

    pub fn binary(v: VarId, w: VarId, table: BinaryTable) -> Self {
        SoftConstraint {
            scope: Scope::Binary(v, w),
            function: ConstraintFunction::Binary(table),
        }
    }

    pub fn interval(v: VarId, w: VarId, interval: GeneralizedInterval) -> Self {
        SoftConstraint {
            scope: Scope::Binary(v, w),
            function: ConstraintFunction::Interval(interval),
        }
    }

    pub fn scope(&self) -> Scope {
        self.scope
    }

    pub fn function(&self) -> &ConstraintFunction {
        &self.function
    }

    /// Evaluates on an assignment vector without range checks.
    pub(crate) fn value(&self, values: &[usize]) -> Evaluation {
        match (&self.scope, &self.function) {
            (Scope::Unary(v), ConstraintFunction::Unary(t)) => t.get(values[v.0]).clone(),
            (Scope::Binary(v, w), ConstraintFunction::Binary(t)) => t.get(values[v.0], values[w.0]).clone(),
            (Scope::Binary(v, w), ConstraintFunction::Interval(g)) => g.value(values[v.0], values[w.0]),
            _ => unreachable!("constructors keep scope and function arity in sync"),
        }
    }
}

/// A total map from the instance's variables to domain values.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Assignment(Vec<usize>);

impl Assignment {
    pub fn new(values: Vec<usize>) -> Self {
        Assignment(values)
    }

    pub fn get(&self, v: VarId) -> usize {
        self.0[v.0]
    }

    pub fn values(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Variables, a domain `1..=M` and a list of soft constraints. Duplicate
/// constraints are kept; their evaluations add up.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    domain_size: usize,
    names: Vec<String>,
    by_name: HashMap<String, VarId>,
    constraints: Vec<SoftConstraint>,
}

impl Instance {
    pub fn new(domain_size: usize) -> Result<Self> {
        if domain_size == 0 {
            return Err(Error::Domain("domain size must be at least 1".into()));
        }
        Ok(Instance {
            domain_size,
            names: Vec::new(),
            by_name: HashMap::new(),
            constraints: Vec::new(),
        })
    }

    /// Same variables and domain, no constraints.
    pub fn with_same_variables(&self) -> Self {
        Instance {
            domain_size: self.domain_size,
            names: self.names.clone(),
            by_name: self.by_name.clone(),
            constraints: Vec::new(),
        }
    }

    pub fn add_variable(&mut self, name: impl Into<String>) -> Result<VarId> {
        let name = name.into();
        if name.is_empty() || name == "/" || name.chars().any(|c| c.is_whitespace() || c == '#') {
            return Err(Error::Scope(format!("invalid variable name `{name}`")));
        }
        if self.by_name.contains_key(&name) {
            return Err(Error::Scope(format!("variable `{name}` declared twice")));
        }
        let id = VarId(self.names.len());
        self.by_name.insert(name.clone(), id);
        self.names.push(name);
        Ok(id)
    }

    pub fn add_constraint(&mut self, c: SoftConstraint) -> Result<()> {
        for v in c.scope.vars() {
            if v.0 >= self.names.len() {
                return Err(Error::Scope(format!("unknown variable {v}")));
            }
        }
        let m = self.domain_size;
        let size_ok = match &c.function {
            ConstraintFunction::Unary(t) => t.size() == m,
            ConstraintFunction::Binary(t) => t.size() == m,
            ConstraintFunction::Interval(g) => {
                g.validate(m)?;
                true
            }
        };
        if !size_ok {
            return Err(Error::Domain(format!("table size does not match domain size {m}")));
        }
        self.constraints.push(c);
        Ok(())
    }

    pub fn domain_size(&self) -> usize {
        self.domain_size
    }

    pub fn num_variables(&self) -> usize {
        self.names.len()
    }

    pub fn variables(&self) -> impl Iterator<Item = VarId> {
        (0..self.names.len()).map(VarId)
    }

    pub fn variable(&self, name: &str) -> Option<VarId> {
        self.by_name.get(name).copied()
    }

    pub fn name(&self, v: VarId) -> &str {
        &self.names[v.0]
    }

    pub fn constraints(&self) -> &[SoftConstraint] {
        &self.constraints
    }

    /// Builds an assignment from `(name, value)` pairs covering every variable.
    pub fn assignment(&self, pairs: &[(&str, usize)]) -> Result<Assignment> {
        let mut values = vec![0; self.names.len()];
        for &(name, value) in pairs {
            let v = self
                .variable(name)
                .ok_or_else(|| Error::Scope(format!("unknown variable `{name}`")))?;
            values[v.0] = value;
        }
        let t = Assignment(values);
        self.check_assignment(&t)?;
        Ok(t)
    }

    pub fn check_assignment(&self, t: &Assignment) -> Result<()> {
        if t.len() != self.names.len() {
            return Err(Error::Scope(format!(
                "assignment has {} values for {} variables",
                t.len(),
                self.names.len()
            )));
        }
        for (i, &d) in t.0.iter().enumerate() {
            if d == 0 || d > self.domain_size {
                return Err(Error::Scope(format!(
                    "variable `{}` assigned {d}, outside 1..={}",
                    self.names[i], self.domain_size
                )));
            }
        }
        Ok(())
    }

    /// Total evaluation of `t`: the sum over all constraints of the function
    /// applied to `t` restricted to the scope.
    pub fn evaluate(&self, t: &Assignment) -> Result<Evaluation> {
        self.check_assignment(t)?;
        Ok(self.evaluate_unchecked(t.values()))
    }

    pub(crate) fn evaluate_unchecked(&self, values: &[usize]) -> Evaluation {
        let mut total = Evaluation::zero();
        for c in &self.constraints {
            total = total + c.value(values);
            if total.is_infinite() {
                break;
            }
        }
        total
    }

    pub(crate) fn push_unchecked(&mut self, c: SoftConstraint) {
        self.constraints.push(c);
    }
}
