use std::fmt::Write as _;

/// Row sense.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Le,
    Ge,
    Eq,
}

impl Sense {
    fn symbol(self) -> &'static str {
        match self {
            Sense::Le => "<=",
            Sense::Ge => ">=",
            Sense::Eq => "=",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Variable {
    pub name: String,
    /// Lower bound is always 0.
    pub upper: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Constraint {
    pub name: String,
    pub coeffs: Vec<(usize, f64)>,
    pub sense: Sense,
    pub rhs: f64,
}

impl Constraint {
    pub fn lhs(&self, point: &[f64]) -> f64 {
        self.coeffs.iter().map(|&(j, a)| a * point[j]).sum()
    }

    /// Amount by which `point` violates the row (0 when satisfied).
    pub fn violation(&self, point: &[f64]) -> f64 {
        let lhs = self.lhs(point);
        match self.sense {
            Sense::Le => (lhs - self.rhs).max(0.0),
            Sense::Ge => (self.rhs - lhs).max(0.0),
            Sense::Eq => (lhs - self.rhs).abs(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Objective {
    Feasibility,
    Maximize(Vec<(usize, f64)>),
}

/// A linear program over variables bounded in `[0, upper]`.
///
/// In the models built by this crate, variable `v < n` is always `cov_v`.
#[derive(Debug, Clone, PartialEq)]
pub struct LpModel {
    pub vars: Vec<Variable>,
    pub rows: Vec<Constraint>,
    pub objective: Objective,
}

impl LpModel {
    pub fn new() -> Self {
        LpModel {
            vars: Vec::new(),
            rows: Vec::new(),
            objective: Objective::Feasibility,
        }
    }

    pub fn add_var(&mut self, name: impl Into<String>, upper: f64) -> usize {
        self.vars.push(Variable {
            name: name.into(),
            upper,
        });
        self.vars.len() - 1
    }

    pub fn add_row(&mut self, name: impl Into<String>, coeffs: Vec<(usize, f64)>, sense: Sense, rhs: f64) {
        self.rows.push(Constraint {
            name: name.into(),
            coeffs,
            sense,
            rhs,
        });
    }

    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v.name == name)
    }

    /// Structural check: every referenced variable exists, all numbers are
    /// finite.
    pub fn check(&self) -> Result<(), String> {
        for var in &self.vars {
            if !var.upper.is_finite() || var.upper < 0.0 {
                return Err(format!("variable {} has bad upper bound {}", var.name, var.upper));
            }
        }
        let objective = match &self.objective {
            Objective::Feasibility => &[][..],
            Objective::Maximize(c) => &c[..],
        };
        for row in self
            .rows
            .iter()
            .map(|r| (&r.name, &r.coeffs[..], r.rhs))
            .chain(std::iter::once((&"objective".to_string(), objective, 0.0)))
        {
            let (name, coeffs, rhs) = row;
            if !rhs.is_finite() {
                return Err(format!("row {name} has non-finite rhs"));
            }
            for &(j, a) in coeffs {
                if j >= self.vars.len() {
                    return Err(format!("row {name} references missing variable {j}"));
                }
                if !a.is_finite() {
                    return Err(format!("row {name} has non-finite coefficient"));
                }
            }
        }
        Ok(())
    }

    /// Largest violation of any row or bound at `point`.
    pub fn max_violation(&self, point: &[f64]) -> f64 {
        let bounds = self
            .vars
            .iter()
            .zip(point)
            .map(|(var, &x)| (-x).max(x - var.upper).max(0.0));
        self.rows
            .iter()
            .map(|row| row.violation(point))
            .chain(bounds)
            .fold(0.0, f64::max)
    }

    /// Name of the first row violated by more than `eps`, if any.
    pub fn first_violated(&self, point: &[f64], eps: f64) -> Option<&str> {
        if let Some(var) = self
            .vars
            .iter()
            .zip(point)
            .find(|(var, &x)| x < -eps || x > var.upper + eps)
        {
            return Some(&var.0.name);
        }
        self.rows
            .iter()
            .find(|row| row.violation(point) > eps)
            .map(|row| row.name.as_str())
    }

    /// Human-readable dump, one row per line.
    pub fn to_lp_text(&self) -> String {
        let mut out = String::new();
        let term_list = |coeffs: &[(usize, f64)]| {
            if coeffs.is_empty() {
                return "0".to_string();
            }
            coeffs
                .iter()
                .map(|&(j, a)| format!("{a} {}", self.vars[j].name))
                .collect::<Vec<_>>()
                .join(" + ")
        };
        match &self.objective {
            Objective::Feasibility => out.push_str("feasibility\n"),
            Objective::Maximize(c) => {
                let _ = writeln!(out, "maximize: {}", term_list(c));
            }
        }
        for row in &self.rows {
            let _ = writeln!(
                out,
                "c_{}: {} {} {}",
                row.name,
                term_list(&row.coeffs),
                row.sense.symbol(),
                row.rhs
            );
        }
        for var in &self.vars {
            let _ = writeln!(out, "bound: 0 <= {} <= {}", var.name, var.upper);
        }
        out
    }
}

impl Default for LpModel {
    fn default() -> Self {
        Self::new()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn violation_and_text() {
        let mut lp = LpModel::new();
        let x = lp.add_var("x", 1.0);
        let y = lp.add_var("y", 1.0);
        lp.add_row("sum", vec![(x, 1.0), (y, 1.0)], Sense::Ge, 1.5);
        assert_eq!(lp.max_violation(&[1.0, 0.25]), 0.25);
        assert_eq!(lp.first_violated(&[1.0, 0.25], 1e-7), Some("sum"));
        assert_eq!(lp.first_violated(&[1.0, 0.5], 1e-7), None);
        assert_eq!(lp.first_violated(&[1.5, 0.5], 1e-7), Some("x"));
        let text = lp.to_lp_text();
        assert!(text.contains("c_sum: 1 x + 1 y >= 1.5"));
        lp.check().unwrap();
        lp.add_row("bad", vec![(7, 1.0)], Sense::Le, 0.0);
        assert!(lp.check().is_err());
    }
}
