//! Every check for one pair `(G, H)`, bundled.

use crate::crossed::{check_chain, untwist_detect, verify_crossed_product, CrossedProductReport, UntwistReport};
use crate::error::Result;
use crate::group::{normal_closure, GroupTable, Subgroup};
use crate::hecke::{HeckeAlgebra, InvolutionReport};
use crate::pair::{HeckePair, PairReport};
use crate::partial_rep::{equivalence_suite, further_properties, EquivalenceReport, FurtherProperties};
use crate::product_law::{
    family_size_audit, presentation_check, product_formula_check, PresentationReport, ProductFormulaReport,
};

#[derive(Debug, Clone, Default)]
pub struct AnalysisOptions {
    /// Run the `|G|²` quantifier audits.
    pub audit_full: bool,
    /// Normal subgroup for the crossed product; the normal closure of `H`
    /// when absent.
    pub normal_subgroup: Option<Subgroup>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LambdaVerdict {
    /// `λ = sqrt(Δ)` exists in `Q`.
    pub derived: bool,
    pub is_identity: bool,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubnormalChecks {
    pub product_formula: ProductFormulaReport,
    /// Only with `audit_full`: first `(x, y)` whose family size is wrong.
    pub family_audit: Option<Option<(usize, usize)>>,
    pub presentation: PresentationReport,
    pub further: FurtherProperties,
    pub consequences: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairAnalysis {
    pub subgroup_elements: Vec<usize>,
    /// Sizes of the double cosets, in representative order.
    pub double_coset_sizes: Vec<usize>,
    pub pair: PairReport,
    pub equivalence: EquivalenceReport,
    pub dictionary_failure: Option<(usize, usize)>,
    pub involutions: InvolutionReport,
    pub delta_failure: Option<(usize, usize)>,
    pub lambda: LambdaVerdict,
    pub subnormal: Option<SubnormalChecks>,
    pub crossed: Option<CrossedProductReport>,
    pub untwist: Option<UntwistReport>,
}

impl PairAnalysis {
    /// Statements that a proved theorem says must hold but did not.
    pub fn contradictions(&self) -> Vec<String> {
        let mut out = Vec::new();
        let p = &self.pair;
        if (p.is_normal && !p.is_subnormal) || (p.is_subnormal && !p.is_protonormal) {
            out.push("normal ⇒ subnormal ⇒ protonormal violated".to_string());
        }
        if !self.equivalence.consistent() {
            out.push("protonormality and the partial representation property disagree".to_string());
        }
        if let Some(f) = self.dictionary_failure {
            out.push(format!("operator dictionary fails at basis pair {f:?}"));
        }
        if !self.involutions.holds() {
            out.push("involution laws fail".to_string());
        }
        if let Some(f) = self.delta_failure {
            out.push(format!("Δ is not multiplicative at {f:?}"));
        }
        if self.lambda.derived && !self.lambda.holds {
            out.push("Λ is not an isomorphism".to_string());
        }
        if let Some(s) = &self.subnormal {
            if !s.product_formula.holds() {
                out.push(format!("product formula fails at {:?}", s.product_formula.failures));
            }
            if let Some(Some(f)) = s.family_audit {
                out.push(format!("family size audit fails at {f:?}"));
            }
            if !s.presentation.holds() {
                out.push("presentation check fails".to_string());
            }
            if !s.further.holds() {
                out.push("consequences of the product relations fail".to_string());
            }
            if !s.consequences {
                out.push("H ∩ H^x ⊴ H or H ⊴ H H^x fails".to_string());
            }
        }
        if let Some(c) = &self.crossed {
            if !c.holds() {
                out.push("crossed product decomposition fails".to_string());
            }
        }
        out
    }
}

pub fn analyze_pair(g: &GroupTable, h: &Subgroup, opts: &AnalysisOptions) -> Result<PairAnalysis> {
    let pair = HeckePair::new(g, h.clone())?;
    if let Some(n) = &opts.normal_subgroup {
        check_chain(g, h, n)?;
    }
    let report = pair.report();
    let delta_failure = pair.delta_multiplicativity()?;
    let double_coset_sizes = pair.double_cosets().blocks().iter().map(|b| b.len()).collect();
    let subnormal = report.is_subnormal;
    let alg = HeckeAlgebra::new(pair);
    let equivalence = equivalence_suite(&alg, opts.audit_full)?;
    let dictionary_failure = alg.dictionary_failure()?;
    let involutions = alg.involution_report()?;
    let lambda = match alg.derive_lambda() {
        Ok(l) => {
            let map = alg.lambda_isomorphism(&l)?;
            LambdaVerdict { derived: true, is_identity: map.is_identity(), holds: alg.lambda_holds(&map)? }
        }
        Err(crate::Error::Lambda(_)) => LambdaVerdict { derived: false, is_identity: false, holds: false },
        Err(e) => return Err(e),
    };
    let (subnormal_checks, crossed, untwist) = if subnormal {
        let checks = SubnormalChecks {
            product_formula: product_formula_check(&alg)?,
            family_audit: if opts.audit_full { Some(family_size_audit(alg.pair())?) } else { None },
            presentation: presentation_check(&alg)?,
            further: further_properties(&alg)?,
            consequences: alg.pair().subnormal_consequences_hold(),
        };
        let n = opts.normal_subgroup.clone().unwrap_or_else(|| normal_closure(g, h));
        let crossed = verify_crossed_product(&alg, &n, None)?;
        let untwist = untwist_detect(&alg, &n)?;
        (Some(checks), Some(crossed), Some(untwist))
    } else {
        (None, None, None)
    };
    Ok(PairAnalysis {
        subgroup_elements: h.elements().to_vec(),
        double_coset_sizes,
        pair: report,
        equivalence,
        dictionary_failure,
        involutions,
        delta_failure,
        lambda,
        subnormal: subnormal_checks,
        crossed,
        untwist,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{generate_subgroup, Family};

    #[test]
    fn d4_pipeline() {
        let g = GroupTable::builtin(Family::Dihedral(4), 100).unwrap();
        let s = g.elements().find(|&x| g.label(x) == "s").unwrap();
        let h = generate_subgroup(&g, &[s]).unwrap();
        let a = analyze_pair(&g, &h, &AnalysisOptions { audit_full: true, normal_subgroup: None }).unwrap();
        assert!(a.contradictions().is_empty(), "{:?}", a.contradictions());
        assert!(a.pair.is_protonormal && a.pair.is_subnormal && !a.pair.is_normal);
        assert_eq!(a.crossed.as_ref().unwrap().isomorphism.dim, 3);
        assert!(a.lambda.is_identity);
    }

    #[test]
    fn s3_negative_control() {
        let g = GroupTable::builtin(Family::Symmetric(3), 100).unwrap();
        let t = g.elements().find(|&x| g.label(x) == "(1,2)").unwrap();
        let h = generate_subgroup(&g, &[t]).unwrap();
        let a = analyze_pair(&g, &h, &AnalysisOptions::default()).unwrap();
        assert!(a.contradictions().is_empty());
        assert!(!a.pair.is_protonormal);
        assert!(a.equivalence.isometry_failure.is_some());
        assert!(a.crossed.is_none());
    }
}
