//! Coefficient and dimension datasets, embedded or loaded from text.
//!
//! Text format (bit-exact): `#` comment lines, then one `index value` pair
//! per line in decimal.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::MoonshineError;
use crate::qseries::IntSeries;

const EMBEDDED_J: &str = include_str!("../../data/j_coefficients.txt");
const EMBEDDED_DIMS: &str = include_str!("../../data/monster_irrep_dims.txt");

/// Where a table's numbers came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    /// Computed in-process from q-expansions.
    Computed(String),
    /// Shipped with the library.
    Embedded,
    /// Read from a user-supplied file or string.
    External(String),
}

fn parse_pairs(text: &str) -> Result<Vec<(i64, BigInt)>, MoonshineError> {
    let mut out = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |msg: &str| MoonshineError::Dataset {
            line: lineno + 1,
            message: format!("{msg}: {raw:?}"),
        };
        let mut parts = line.split_whitespace();
        let (Some(idx), Some(val), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(bad("expected `index value`"));
        };
        let idx: i64 = idx.parse().map_err(|_| bad("bad index"))?;
        let val: BigInt = val.parse().map_err(|_| bad("bad value"))?;
        out.push((idx, val));
    }
    Ok(out)
}

fn render(header: &[&str], pairs: impl Iterator<Item = (i64, BigInt)>) -> String {
    let mut s = String::new();
    for h in header {
        let _ = writeln!(s, "# {h}");
    }
    for (i, v) in pairs {
        let _ = writeln!(s, "{i} {v}");
    }
    s
}

/// Coefficients `c(n)` of a q-expansion starting at `n = -1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoeffTable {
    values: BTreeMap<i64, BigInt>,
    provenance: Provenance,
}

impl CoeffTable {
    fn checked(values: BTreeMap<i64, BigInt>, provenance: Provenance) -> Result<Self, MoonshineError> {
        let keys: Vec<i64> = values.keys().copied().collect();
        if keys.first() != Some(&-1) || keys.windows(2).any(|w| w[1] != w[0] + 1) {
            return Err(MoonshineError::InvalidTable(
                "indices must run contiguously from -1".into(),
            ));
        }
        if !values[&-1].is_one() {
            return Err(MoonshineError::InvalidTable("c(-1) must be 1".into()));
        }
        Ok(Self { values, provenance })
    }

    /// Table of an expansion with valuation -1 (such as `J` or `J - 744`).
    pub fn from_series(series: &IntSeries, label: &str) -> Result<Self, MoonshineError> {
        let values = (-1..series.trunc())
            .map(|n| Ok((n, series.coeff(n)?)))
            .collect::<Result<BTreeMap<_, _>, MoonshineError>>()?;
        Self::checked(values, Provenance::Computed(label.to_string()))
    }

    /// The shipped head of the `J` expansion (`c(0) = 744`).
    pub fn embedded() -> Self {
        Self::parse(EMBEDDED_J, Provenance::Embedded).expect("embedded dataset is well formed")
    }

    pub fn parse(text: &str, provenance: Provenance) -> Result<Self, MoonshineError> {
        let mut values = BTreeMap::new();
        for (i, v) in parse_pairs(text)? {
            if values.insert(i, v).is_some() {
                return Err(MoonshineError::InvalidTable(format!("duplicate index {i}")));
            }
        }
        Self::checked(values, provenance)
    }

    /// Same table with `c(0)` replaced by 0, i.e. the table of `J - 744`.
    pub fn normalized(&self) -> Self {
        let mut t = self.clone();
        if let Some(c0) = t.values.get_mut(&0) {
            *c0 = BigInt::zero();
        }
        t
    }

    pub fn get(&self, n: i64) -> Option<&BigInt> {
        self.values.get(&n)
    }

    /// Largest index present.
    pub fn max_index(&self) -> i64 {
        *self.values.keys().next_back().expect("c(-1) always present")
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.values.iter().map(|(k, v)| (*k, v))
    }

    /// Restricts to indices `<= max`.
    pub fn head(&self, max: i64) -> Self {
        Self {
            values: self.values.range(..=max).map(|(k, v)| (*k, v.clone())).collect(),
            provenance: self.provenance.clone(),
        }
    }

    /// Dataset text in the shipped format.
    pub fn to_text(&self, header: &[&str]) -> String {
        render(header, self.values.iter().map(|(k, v)| (*k, v.clone())))
    }

    #[cfg(test)]
    pub(crate) fn with_value(&self, n: i64, v: BigInt) -> Self {
        let mut t = self.clone();
        t.values.insert(n, v);
        t
    }
}

/// Head of the monster's irreducible dimensions, `r_1 = 1 < r_2 < ...`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IrrepDims {
    dims: Vec<BigInt>,
    provenance: Provenance,
}

impl IrrepDims {
    pub fn new(dims: Vec<BigInt>, provenance: Provenance) -> Result<Self, MoonshineError> {
        if dims.first().map(One::is_one) != Some(true) {
            return Err(MoonshineError::InvalidTable("r_1 must be 1".into()));
        }
        if dims.windows(2).any(|w| w[1] <= w[0]) {
            return Err(MoonshineError::InvalidTable("dimensions must increase".into()));
        }
        Ok(Self { dims, provenance })
    }

    /// The five shipped values `r_1 .. r_5`.
    pub fn embedded() -> Self {
        Self::parse(EMBEDDED_DIMS, Provenance::Embedded).expect("embedded dataset is well formed")
    }

    pub fn parse(text: &str, provenance: Provenance) -> Result<Self, MoonshineError> {
        let pairs = parse_pairs(text)?;
        for (pos, (i, _)) in pairs.iter().enumerate() {
            if *i != pos as i64 + 1 {
                return Err(MoonshineError::InvalidTable(format!(
                    "dimension indices must run 1, 2, ...; found {i} at position {}",
                    pos + 1
                )));
            }
        }
        Self::new(pairs.into_iter().map(|(_, v)| v).collect(), provenance)
    }

    /// Extends `self` with the entries of `more` beyond its length. Entries
    /// present in both must agree.
    pub fn extended_with(&self, more: &IrrepDims) -> Result<Self, MoonshineError> {
        for (i, (a, b)) in self.dims.iter().zip(&more.dims).enumerate() {
            if a != b {
                return Err(MoonshineError::InvalidTable(format!(
                    "supplied r_{} = {b} disagrees with {a}",
                    i + 1
                )));
            }
        }
        let mut dims = self.dims.clone();
        dims.extend(more.dims.iter().skip(self.dims.len()).cloned());
        let provenance = if more.dims.len() > self.dims.len() {
            more.provenance.clone()
        } else {
            self.provenance.clone()
        };
        Self::new(dims, provenance)
    }

    pub fn dims(&self) -> &[BigInt] {
        &self.dims
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    /// `r_n`, 1-based.
    pub fn get(&self, n: usize) -> Option<&BigInt> {
        n.checked_sub(1).and_then(|i| self.dims.get(i))
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn to_text(&self, header: &[&str]) -> String {
        render(header, self.dims.iter().enumerate().map(|(i, v)| (i as i64 + 1, v.clone())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_tables_load() {
        let c = CoeffTable::embedded();
        assert_eq!(c.max_index(), 4);
        assert_eq!(c.get(0), Some(&BigInt::from(744)));
        assert_eq!(c.normalized().get(0), Some(&BigInt::zero()));
        let r = IrrepDims::embedded();
        assert_eq!(r.len(), 5);
        assert_eq!(r.get(2), Some(&BigInt::from(196883)));
        assert_eq!(r.get(0), None);
    }

    #[test]
    fn text_round_trip_is_bit_exact() {
        let text = EMBEDDED_J;
        let c = CoeffTable::parse(text, Provenance::Embedded).unwrap();
        let header: Vec<&str> = text
            .lines()
            .filter_map(|l| l.strip_prefix("# "))
            .collect();
        assert_eq!(c.to_text(&header), text);
        let d = IrrepDims::embedded();
        let header: Vec<&str> = EMBEDDED_DIMS.lines().filter_map(|l| l.strip_prefix("# ")).collect();
        assert_eq!(d.to_text(&header), EMBEDDED_DIMS);
    }

    #[test]
    fn malformed_input_rejected() {
        assert!(matches!(
            CoeffTable::parse("-1 1\n0 x\n", Provenance::Embedded),
            Err(MoonshineError::Dataset { line: 2, .. })
        ));
        assert!(CoeffTable::parse("0 744\n", Provenance::Embedded).is_err());
        assert!(CoeffTable::parse("-1 2\n", Provenance::Embedded).is_err());
        assert!(CoeffTable::parse("-1 1\n1 5\n", Provenance::Embedded).is_err());
        assert!(IrrepDims::parse("1 1\n3 5\n", Provenance::Embedded).is_err());
        assert!(IrrepDims::parse("1 1\n2 1\n", Provenance::Embedded).is_err());
        assert!(IrrepDims::parse("1 1 1\n", Provenance::Embedded).is_err());
    }

    #[test]
    fn extension_requires_agreement() {
        let r = IrrepDims::embedded();
        let more = IrrepDims::parse("1 1\n2 196883\n3 21296876\n4 842609326\n5 18538750076\n6 19360062527\n", Provenance::External("t".into())).unwrap();
        let ext = r.extended_with(&more).unwrap();
        assert_eq!(ext.len(), 6);
        let wrong = IrrepDims::parse("1 1\n2 196884\n", Provenance::External("t".into())).unwrap();
        assert!(r.extended_with(&wrong).is_err());
    }
}
