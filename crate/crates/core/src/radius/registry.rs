use std::collections::BTreeMap;
use std::sync::Arc;

use super::{
    solve_equation, CcSolver, ClassTag, ClassicalSolver, CsSolver, GenStarlikeExtremalSolver,
    GenStarlikeSolver, JanowskiSolver, KsSolver, OrderAlphaSolver, RadiusError, RadiusProblem,
    RadiusResult, ScSolver,
};

/// `LHS(r)` and the constant `RHS` of one radius equation.
pub trait RadiusEquation: Send + Sync {
    /// Left-hand side at `r` in `[0, r_max]`; non-decreasing in `r`.
    fn lhs(&self, r: f64) -> Result<f64, RadiusError>;

    /// The distance lower bound on the right-hand side.
    fn rhs(&self) -> f64;

    /// Real Taylor coefficients of the extremal function whose positivity
    /// the sharpness statement assumes.
    fn extremal_coefficients(&self) -> Vec<f64>;
}

/// Turns a problem of one class into its radius equation.
pub trait RadiusSolver: Send + Sync {
    fn name(&self) -> &'static str;

    fn class(&self) -> ClassTag;

    fn build(&self, p: &RadiusProblem) -> Result<Box<dyn RadiusEquation>, RadiusError>;
}

/// Solvers keyed by name; problems are dispatched on their class name.
#[derive(Clone, Default)]
pub struct SolverRegistry {
    solvers: BTreeMap<String, Arc<dyn RadiusSolver>>,
}

impl SolverRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    /// Registry holding one solver per [`ClassTag`].
    pub fn with_builtin() -> Self {
        let mut reg = Self::new();
        reg.register(Arc::new(GenStarlikeSolver));
        reg.register(Arc::new(GenStarlikeExtremalSolver));
        reg.register(Arc::new(JanowskiSolver));
        reg.register(Arc::new(OrderAlphaSolver));
        reg.register(Arc::new(ClassicalSolver));
        reg.register(Arc::new(KsSolver));
        reg.register(Arc::new(ScSolver));
        reg.register(Arc::new(CcSolver));
        reg.register(Arc::new(CsSolver));
        reg
    }

    /// Adds `solver`, returning any solver previously registered under the
    /// same name.
    pub fn register(&mut self, solver: Arc<dyn RadiusSolver>) -> Option<Arc<dyn RadiusSolver>> {
        self.solvers.insert(solver.name().to_string(), solver)
    }

    pub fn get(&self, name: &str) -> Option<&Arc<dyn RadiusSolver>> {
        self.solvers.get(name)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.solvers.keys().map(String::as_str)
    }

    pub fn build(&self, p: &RadiusProblem) -> Result<Box<dyn RadiusEquation>, RadiusError> {
        p.validate()?;
        let name = p.class.name();
        let solver = self
            .get(name)
            .ok_or_else(|| RadiusError::UnknownSolver(name.to_string()))?;
        solver.build(p)
    }

    pub fn solve(&self, p: &RadiusProblem) -> Result<RadiusResult, RadiusError> {
        let eq = self.build(p)?;
        solve_equation(eq.as_ref(), p)
    }
}
