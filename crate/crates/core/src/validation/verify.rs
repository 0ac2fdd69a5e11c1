//! Independent checker for global typing witnesses.

use thiserror::Error;

use super::{check_gtw_extra, GlobalTypingWitness, Validator};
use crate::matching::{BagTooLarge, Sign};
use crate::rdf::NodeId;
use crate::schema::ShapeLabel;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("typing holds both signs for ({0:?}, <{1}>)")]
    Inconsistent(NodeId, ShapeLabel),
    #[error("positive entry ({0:?}, <{1}>) has no local witness")]
    MissingWitness(NodeId, ShapeLabel),
    #[error("local witness for ({0:?}, <{1}>) has no positive typing entry")]
    StrayWitness(NodeId, ShapeLabel),
    #[error("unknown shape <{0}>")]
    UnknownShape(ShapeLabel),
    #[error("not a local witness of ({0:?}, <{1}>)")]
    NotLocalWitness(NodeId, ShapeLabel),
    #[error("witness of ({0:?}, <{1}>) requires ({2:?}, <{3}>, {4}) which the typing lacks")]
    PropagationMissing(NodeId, ShapeLabel, NodeId, ShapeLabel, Sign),
    #[error("negative entry ({0:?}, <{1}>) is not in the certain typing")]
    UncertainNegative(NodeId, ShapeLabel),
    #[error("witness of ({0:?}, <{1}>) sends an edge to extra that a constraint would accept")]
    ExtraViolated(NodeId, ShapeLabel),
    #[error("positive entry ({0:?}, <{1}>) contradicts the certain typing")]
    UncertainPositive(NodeId, ShapeLabel),
    #[error(transparent)]
    BagTooLarge(#[from] BagTooLarge),
}

impl Validator<'_> {
    /// Checks that `w` is a global typing witness for the graph and schema.
    pub fn verify(&self, w: &GlobalTypingWitness) -> Result<(), VerifyError> {
        for (n, s, sign) in w.typing.iter() {
            if *sign == Sign::Pos && w.typing.contains(*n, s, Sign::Neg) {
                return Err(VerifyError::Inconsistent(*n, s.clone()));
            }
            if self.schema.shape(s).is_none() {
                return Err(VerifyError::UnknownShape(s.clone()));
            }
        }
        for (n, s) in w.typing.positives() {
            if !w.lw.contains_key(&(n, s.clone())) {
                return Err(VerifyError::MissingWitness(n, s.clone()));
            }
        }
        for ((n, s), lw) in &w.lw {
            if !w.typing.contains(*n, s, Sign::Pos) {
                return Err(VerifyError::StrayWitness(*n, s.clone()));
            }
            if !self.schema.check_local_witness(self.graph, *n, s, lw)? {
                return Err(VerifyError::NotLocalWitness(*n, s.clone()));
            }
            for (m, t, sign) in self.schema.propagation(self.graph, s, lw).iter() {
                if !w.typing.contains(*m, t, *sign) {
                    return Err(VerifyError::PropagationMissing(*n, s.clone(), *m, t.clone(), *sign));
                }
            }
            if !check_gtw_extra(self.graph, self.schema, s, lw, &self.cert) {
                return Err(VerifyError::ExtraViolated(*n, s.clone()));
            }
        }
        for (n, s, sign) in w.typing.iter() {
            match sign {
                Sign::Neg if !self.cert.typing.contains(*n, s, Sign::Neg) => {
                    return Err(VerifyError::UncertainNegative(*n, s.clone()));
                }
                Sign::Pos if self.cert.decides(s) && !self.cert.typing.contains(*n, s, Sign::Pos) => {
                    return Err(VerifyError::UncertainPositive(*n, s.clone()));
                }
                _ => {}
            }
        }
        Ok(())
    }

    pub fn is_witness(&self, w: &GlobalTypingWitness) -> bool {
        self.verify(w).is_ok()
    }
}
