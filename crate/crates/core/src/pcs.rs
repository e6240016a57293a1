//! Parity check systems (H|S) and coset presentations of codes, with the two
//! conversions between them.
//!
//! A system (H|S) is valid when
//!
//! * (i) every entry s_ij lies in the ideal {h_i . x : x in R^n},
//! * (ii) the columns of S are pairwise distinct,
//! * (iii) every relation sum_i r_i h_i = 0 among the rows of H also
//!   annihilates the rows of S.
//!
//! The code it describes is { x : H x^T in col(S) }, with partial kernel
//! <rows(H)>^perp and one coset per column of S.

use std::collections::HashMap;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::ring::{Budget, Matrix, RingSpec, RingVec};
use crate::submodule::{syzygies, ColumnSolver, LinearSolver, Submodule};

/// A code given as a disjoint union of cosets d_j + D_C of a partial kernel.
#[derive(Debug, Clone)]
pub struct CodePresentation {
    kernel: Submodule,
    reps: Vec<RingVec>,
}

impl CodePresentation {
    pub fn new(kernel: Submodule, reps: Vec<RingVec>) -> Result<Self> {
        if reps.is_empty() {
            return Err(Error::InvalidPresentation("a code needs at least one coset".into()));
        }
        let n = kernel.ambient_len();
        let mut seen: HashMap<RingVec, usize> = HashMap::with_capacity(reps.len());
        for (j, d) in reps.iter().enumerate() {
            if d.len() != n {
                return Err(Error::LengthMismatch {
                    expected: n,
                    found: d.len(),
                });
            }
            let key = kernel.coset_representative(d)?;
            if let Some(i) = seen.insert(key, j) {
                return Err(Error::InvalidPresentation(format!(
                    "representatives {} and {} lie in the same coset",
                    i + 1,
                    j + 1
                )));
            }
        }
        Ok(CodePresentation { kernel, reps })
    }

    pub fn from_generators(
        spec: &RingSpec,
        n: usize,
        kernel_generators: Vec<RingVec>,
        reps: Vec<RingVec>,
    ) -> Result<Self> {
        Self::new(Submodule::from_generators(spec, n, kernel_generators)?, reps)
    }

    pub fn spec(&self) -> &RingSpec {
        self.kernel.spec()
    }

    pub fn len(&self) -> usize {
        self.kernel.ambient_len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The partial kernel D_C.
    pub fn kernel(&self) -> &Submodule {
        &self.kernel
    }

    pub fn reps(&self) -> &[RingVec] {
        &self.reps
    }

    pub fn num_cosets(&self) -> usize {
        self.reps.len()
    }

    /// |C| = s |D_C|.
    pub fn cardinality(&self) -> u128 {
        self.reps.len() as u128 * self.kernel.cardinality()
    }

    /// Index of the coset containing `x`, if `x` is a codeword.
    pub fn coset_of(&self, x: &RingVec) -> Result<Option<usize>> {
        let key = self.kernel.coset_representative(x)?;
        for (j, d) in self.reps.iter().enumerate() {
            if self.kernel.coset_representative(d)? == key {
                return Ok(Some(j));
            }
        }
        Ok(None)
    }

    /// -C = U_j (-d_j + D_C).
    pub fn negated(&self) -> CodePresentation {
        let spec = self.spec();
        CodePresentation {
            kernel: self.kernel.clone(),
            reps: self.reps.iter().map(|d| spec.neg_vec(d)).collect(),
        }
    }

    /// Every codeword, coset by coset.
    pub fn codewords(&self, budget: Budget) -> Result<Vec<RingVec>> {
        budget.check(self.cardinality())?;
        let spec = self.spec();
        let kernel: Vec<RingVec> = self.kernel.enumerate(budget)?.collect();
        Ok(self
            .reps
            .iter()
            .flat_map(|d| kernel.iter().map(move |k| spec.add_vecs(d, k)))
            .collect())
    }
}

/// A validated parity check system together with the derived objects every
/// query needs: <rows(H)>, the partial kernel D_C = <rows(H)>^perp and a
/// lookup table from syndromes to column indices.
#[derive(Debug, Clone)]
pub struct ParityCheckSystem {
    spec: RingSpec,
    h: Matrix,
    s: Matrix,
    columns: Vec<RingVec>,
    syndromes: HashMap<RingVec, usize>,
    row_span: Submodule,
    partial_kernel: Submodule,
    row_solver: LinearSolver,
    column_solver: ColumnSolver,
}

impl ParityCheckSystem {
    /// Checks conditions (i), (ii) and (iii) in that order and builds the
    /// system. Errors name the first failing datum.
    pub fn new(spec: &RingSpec, h: Matrix, s: Matrix) -> Result<Self> {
        if h.nrows() != s.nrows() {
            return Err(Error::LengthMismatch {
                expected: h.nrows(),
                found: s.nrows(),
            });
        }
        for row in h.rows().iter().chain(s.rows()) {
            spec.check_vec(row)?;
        }
        if s.ncols() == 0 {
            return Err(Error::InvalidPresentation("S needs at least one column".into()));
        }
        let m = h.nrows();
        let n = h.ncols();

        // (i): per factor, the ideal generated by row i is gcd(row, t) Z_t
        for i in 0..m {
            let gcds: Vec<u64> = spec
                .factors()
                .iter()
                .enumerate()
                .map(|(f, &t)| h.row(i).coords().iter().fold(t, |acc, a| acc.gcd(&a.residues()[f])))
                .collect();
            for j in 0..s.ncols() {
                let entry = s.entry(i, j).residues();
                if entry.iter().zip(&gcds).any(|(&e, &g)| e % g != 0) {
                    return Err(Error::ConditionIViolation { row: i, col: j });
                }
            }
        }

        // (ii)
        let columns = s.columns();
        let mut syndromes: HashMap<RingVec, usize> = HashMap::with_capacity(columns.len());
        for (j, col) in columns.iter().enumerate() {
            if let Some(first) = syndromes.insert(col.clone(), j) {
                return Err(Error::ConditionIIViolation { first, second: j });
            }
        }

        // (iii): enough to test generators of the relation module
        let relations = syzygies(spec, h.rows(), n)?;
        for r in relations.generators() {
            let mut acc = spec.zero_vec(s.ncols());
            for (c, row) in r.coords().iter().zip(s.rows()) {
                acc = spec.add_vecs(&acc, &spec.scale_vec(c, row));
            }
            if !acc.is_zero() {
                return Err(Error::ConditionIIIViolation { syzygy: r.clone() });
            }
        }

        let row_span = Submodule::from_generators(spec, n, h.rows().to_vec())?;
        let partial_kernel = row_span.annihilator();
        let row_solver = LinearSolver::new(spec, h.rows(), n)?;
        let column_solver = ColumnSolver::new(spec, &h)?;
        Ok(ParityCheckSystem {
            spec: spec.clone(),
            h,
            s,
            columns,
            syndromes,
            row_span,
            partial_kernel,
            row_solver,
            column_solver,
        })
    }

    /// The system of the code `pres` built from generators of D_C^perp:
    /// row i is h_i and s_ij = h_i . d_j. Without explicit generators the
    /// canonical generators of the annihilator are used.
    pub fn from_code(pres: &CodePresentation, dual_generators: Option<&[RingVec]>) -> Result<Self> {
        let spec = pres.spec();
        let n = pres.len();
        let dual = pres.kernel().annihilator();
        let rows: Vec<RingVec> = match dual_generators {
            Some(gens) => {
                let given = Submodule::from_generators(spec, n, gens.to_vec())?;
                if given != dual {
                    return Err(Error::DualMismatch);
                }
                gens.to_vec()
            }
            None => dual.canonical_generators(),
        };
        let s_rows: Vec<RingVec> = rows
            .iter()
            .map(|h| pres.reps().iter().map(|d| spec.dot_unchecked(h, d)).collect())
            .collect();
        let h = Matrix::new(rows, n)?;
        let s = Matrix::new(s_rows, pres.num_cosets())?;
        Self::new(spec, h, s)
    }

    pub fn spec(&self) -> &RingSpec {
        &self.spec
    }

    pub fn h(&self) -> &Matrix {
        &self.h
    }

    pub fn s(&self) -> &Matrix {
        &self.s
    }

    /// Number of rows m.
    pub fn num_checks(&self) -> usize {
        self.h.nrows()
    }

    /// Code length n.
    pub fn len(&self) -> usize {
        self.h.ncols()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Number of columns s of S, one per coset.
    pub fn num_cosets(&self) -> usize {
        self.columns.len()
    }

    pub fn columns(&self) -> &[RingVec] {
        &self.columns
    }

    /// <rows(H)> = D_C^perp.
    pub fn row_span(&self) -> &Submodule {
        &self.row_span
    }

    /// D_C = <rows(H)>^perp.
    pub fn partial_kernel(&self) -> &Submodule {
        &self.partial_kernel
    }

    /// |C| = s |R|^n / |<rows(H)>|.
    pub fn code_cardinality(&self) -> u128 {
        self.columns.len() as u128 * self.partial_kernel.cardinality()
    }

    pub(crate) fn row_solver(&self) -> &LinearSolver {
        &self.row_solver
    }

    pub(crate) fn column_index(&self, syndrome: &RingVec) -> Option<usize> {
        self.syndromes.get(syndrome).copied()
    }

    /// H x^T.
    pub fn syndrome(&self, x: &RingVec) -> Result<RingVec> {
        self.spec.check_vec(x)?;
        self.h.mul_vec(&self.spec, x)
    }

    /// Index j with H x^T equal to column j of S, or `None` when x is not a
    /// codeword.
    pub fn member(&self, x: &RingVec) -> Result<Option<usize>> {
        let syn = self.syndrome(x)?;
        Ok(self.column_index(&syn))
    }

    /// The unique code of the system as a coset presentation. Each
    /// representative is the solver's preimage of the corresponding column.
    pub fn to_code(&self) -> Result<CodePresentation> {
        let reps = self
            .columns
            .iter()
            .enumerate()
            .map(|(j, col)| {
                self.column_solver.solve_unchecked(col).ok_or_else(|| {
                    Error::InternalInconsistency(format!("column {} of S has no preimage under H", j + 1))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        CodePresentation::new(self.partial_kernel.clone(), reps)
    }

    /// ker(col(S)): syndromes sigma in the image of H with
    /// r sigma + col(S) = col(S) for every r in R.
    ///
    /// Any such sigma satisfies sigma + S_1 in col(S), so only the s
    /// differences S_l - S_1 are candidates. A candidate is accepted when its
    /// whole cyclic module R sigma translates col(S) into itself; that module
    /// can have at most s elements.
    pub fn kernel_syndromes(&self) -> Result<Vec<RingVec>> {
        let spec = &self.spec;
        let m = self.num_checks();
        let s = self.columns.len();
        let base = &self.columns[0];
        let mut accepted = Vec::new();
        'candidates: for col in &self.columns {
            let sigma = spec.sub_vecs(col, base);
            let cyclic = Submodule::from_generators(spec, m, vec![sigma.clone()])?;
            if cyclic.cardinality() > s as u128 {
                continue;
            }
            for rho in cyclic.enumerate(Budget(s as u128))? {
                for c in &self.columns {
                    if !self.syndromes.contains_key(&spec.add_vecs(&rho, c)) {
                        continue 'candidates;
                    }
                }
            }
            accepted.push(sigma);
        }
        Ok(accepted)
    }

    /// ker(C) = { x : H x^T in ker(col(S)) }, assembled as D_C plus one
    /// preimage of each kernel syndrome.
    pub fn kernel(&self) -> Result<Submodule> {
        let mut gens = self.partial_kernel.canonical_generators();
        for sigma in self.kernel_syndromes()? {
            let x = self.column_solver.solve_unchecked(&sigma).ok_or_else(|| {
                Error::InternalInconsistency(format!("kernel syndrome {sigma} has no preimage"))
            })?;
            gens.push(x);
        }
        Submodule::from_generators(&self.spec, self.len(), gens)
    }

    /// C is linear iff col(S) is a submodule of the syndrome module, i.e. it
    /// contains zero and every column is a kernel syndrome.
    pub fn is_linear(&self) -> Result<bool> {
        let m = self.num_checks();
        if !self.syndromes.contains_key(&self.spec.zero_vec(m)) {
            return Ok(false);
        }
        Ok(self.kernel_syndromes()?.len() == self.columns.len())
    }
}

/// Validates (H|S) against conditions (i)-(iii).
pub fn validate_pcs(spec: &RingSpec, h: Matrix, s: Matrix) -> Result<ParityCheckSystem> {
    ParityCheckSystem::new(spec, h, s)
}

pub fn code_to_pcs(pres: &CodePresentation, dual_generators: Option<&[RingVec]>) -> Result<ParityCheckSystem> {
    ParityCheckSystem::from_code(pres, dual_generators)
}

pub fn pcs_to_code(pcs: &ParityCheckSystem) -> Result<CodePresentation> {
    pcs.to_code()
}
