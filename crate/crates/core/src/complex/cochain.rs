use crate::error::{structural, Result};
use crate::field::Field;

use super::{AtomId, FamilyId, FiberedComplex, Instance};

/// A degree-n cochain: one coefficient per instance, stored per family and
/// aligned with the family base, so its support always lies in the base.
#[derive(Debug, Clone, PartialEq)]
pub struct Cochain<F> {
    degree: usize,
    values: Vec<Vec<F>>,
}

impl<F: Field> Cochain<F> {
    pub fn zero(complex: &FiberedComplex, degree: usize) -> Self {
        let values = complex.families(degree).iter().map(|f| vec![F::zero(); f.base.len()]).collect();
        Self { degree, values }
    }

    pub fn constant(complex: &FiberedComplex, degree: usize, value: F) -> Self {
        let values = complex.families(degree).iter().map(|f| vec![value.clone(); f.base.len()]).collect();
        Self { degree, values }
    }

    /// From the canonical instance vector of the given degree.
    pub fn from_vector(complex: &FiberedComplex, degree: usize, v: &[F]) -> Result<Self> {
        if v.len() != complex.count(degree) {
            return Err(structural(format!(
                "vector of length {} for {} instances of degree {degree}",
                v.len(),
                complex.count(degree)
            )));
        }
        let mut values = Vec::new();
        let mut it = v.iter().cloned();
        for fam in complex.families(degree) {
            values.push(it.by_ref().take(fam.base.len()).collect());
        }
        Ok(Self { degree, values })
    }

    pub fn from_values(degree: usize, values: Vec<Vec<F>>) -> Self {
        Self { degree, values }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn values(&self) -> &[Vec<F>] {
        &self.values
    }

    pub fn to_vector(&self) -> Vec<F> {
        self.values.iter().flatten().cloned().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().flatten().all(F::is_zero)
    }

    /// Checks that the per-family layout matches `complex` in this degree.
    pub fn check_layout(&self, complex: &FiberedComplex) -> Result<()> {
        let fams = complex.families(self.degree);
        if fams.len() != self.values.len() {
            return Err(structural(format!(
                "cochain has {} families in degree {}, complex has {}",
                self.values.len(),
                self.degree,
                fams.len()
            )));
        }
        for (fid, (fam, vals)) in fams.iter().zip(&self.values).enumerate() {
            if fam.base.len() != vals.len() {
                return Err(structural(format!(
                    "cochain family {fid} has {} values for a base of {} atoms",
                    vals.len(),
                    fam.base.len()
                )));
            }
        }
        Ok(())
    }

    pub fn get(&self, complex: &FiberedComplex, inst: Instance) -> F {
        debug_assert_eq!(inst.dim, self.degree);
        match complex.family(inst.dim, inst.family).position(inst.atom) {
            Some(p) => self.values[inst.family][p].clone(),
            None => F::zero(),
        }
    }

    pub fn set(&mut self, complex: &FiberedComplex, inst: Instance, value: F) {
        let p = complex
            .family(inst.dim, inst.family)
            .position(inst.atom)
            .expect("instance atom lies in the family base");
        self.values[inst.family][p] = value;
    }

    /// Multiplies the values of `family` by the indicator of `atoms`.
    pub fn restrict(&self, complex: &FiberedComplex, family: FamilyId, atoms: &[AtomId]) -> Self {
        let mut out = self.clone();
        let base = &complex.family(self.degree, family).base;
        for (p, a) in base.iter().enumerate() {
            if !atoms.contains(a) {
                out.values[family][p] = F::zero();
            }
        }
        out
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.degree, rhs.degree);
        let values = self
            .values
            .iter()
            .zip(&rhs.values)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x.add(y)).collect())
            .collect();
        Self { degree: self.degree, values }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!(self.degree, rhs.degree);
        let values = self
            .values
            .iter()
            .zip(&rhs.values)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x.sub(y)).collect())
            .collect();
        Self { degree: self.degree, values }
    }

    pub fn scale(&self, s: &F) -> Self {
        let values = self.values.iter().map(|a| a.iter().map(|x| x.mul(s)).collect()).collect();
        Self { degree: self.degree, values }
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Cochain<G> {
        Cochain {
            degree: self.degree,
            values: self.values.iter().map(|a| a.iter().map(&f).collect()).collect(),
        }
    }
}
