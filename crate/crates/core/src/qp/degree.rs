use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::{Qp, QpError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DegreeViolation {
    /// A stored arrow degree outside `1..=N-2`.
    ArrowWindow { id: String, degree: i32 },
    /// A potential term whose total degree is not `3 - N`.
    Inhomogeneous { cycle: String, degree: i64 },
}

impl fmt::Display for DegreeViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DegreeViolation::ArrowWindow { id, degree } => {
                write!(f, "arrow window: {id} has degree {degree}")
            }
            DegreeViolation::Inhomogeneous { cycle, degree } => {
                write!(f, "homogeneity: ({cycle}) has degree {degree}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DegreeReport {
    pub violations: Vec<DegreeViolation>,
}

impl DegreeReport {
    pub fn passes(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the grading conditions of a quiver with superpotential of degree
/// `N`.
///
/// A stored degree `d` stands for the cohomological degree `1 - d`. Stored
/// arrows must satisfy `1 <= d <= N-2` (their Serre duals and the
/// degree `2-N` loops are implicit), and every term must have total degree
/// `3 - N`.
pub fn validate_superpotential_degree(qp: &Qp) -> Result<DegreeReport, QpError> {
    let n = qp.degree_n.ok_or(QpError::MissingDegree)?;
    if n < 3 {
        return Err(QpError::InvalidDegreeN(n));
    }
    let n = n as i64;
    let mut report = DegreeReport::default();
    for a in qp.quiver.arrows() {
        let d = a.degree as i64;
        if d < 1 || d > n - 2 {
            report.violations.push(DegreeViolation::ArrowWindow { id: a.id.clone(), degree: a.degree });
        }
    }
    let map = qp.quiver.arrow_map();
    for (cycle, _) in qp.potential.terms() {
        let mut total = 0i64;
        for id in cycle {
            let a = map.get(id.as_str()).ok_or_else(|| QpError::UnknownArrow(id.clone()))?;
            total += 1 - a.degree as i64;
        }
        if total != 3 - n {
            report
                .violations
                .push(DegreeViolation::Inhomogeneous { cycle: cycle.join(" "), degree: total });
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qp::{Arrow, Potential, Quiver};
    use alloc::string::ToString;
    use alloc::vec;

    fn cycle_qp(degrees: [i32; 3], n: u32) -> Qp {
        let q = Quiver::new(
            3,
            vec![
                Arrow::new("a", 1, 2).with_degree(degrees[0]),
                Arrow::new("b", 2, 3).with_degree(degrees[1]),
                Arrow::new("c", 3, 1).with_degree(degrees[2]),
            ],
        )
        .unwrap();
        Qp { quiver: q, potential: Potential::from_cycles(&[&["a", "b", "c"]]), degree_n: Some(n) }
    }

    #[test]
    fn cy3_three_cycle_passes() {
        assert!(validate_superpotential_degree(&cycle_qp([1, 1, 1], 3)).unwrap().passes());
    }

    #[test]
    fn degree_two_arrow_fails_window_for_n3() {
        let r = validate_superpotential_degree(&cycle_qp([1, 1, 2], 3)).unwrap();
        assert!(matches!(r.violations[0], DegreeViolation::ArrowWindow { degree: 2, .. }));
        assert!(r.violations[0].to_string().contains("arrow window"));
    }

    #[test]
    fn n4_mixed_cycle_homogeneity() {
        // degrees 0 + (-1) + (-1) = -2, not 3 - 4
        let r = validate_superpotential_degree(&cycle_qp([1, 2, 2], 4)).unwrap();
        assert_eq!(r.violations.len(), 1);
        assert!(matches!(r.violations[0], DegreeViolation::Inhomogeneous { degree: -2, .. }));
        assert!(validate_superpotential_degree(&cycle_qp([1, 1, 2], 4)).unwrap().passes());
    }

    #[test]
    fn missing_or_small_n() {
        let mut qp = cycle_qp([1, 1, 1], 3);
        qp.degree_n = None;
        assert_eq!(validate_superpotential_degree(&qp), Err(QpError::MissingDegree));
        qp.degree_n = Some(2);
        assert_eq!(validate_superpotential_degree(&qp), Err(QpError::InvalidDegreeN(2)));
    }
}
