//! Per-region count data: events, person-time, optional covariates.
//!
//! CSV format: header `region_id,y,n` optionally followed by covariate
//! columns `x1,...,xp`. When covariate columns are present they are used as
//! the full design matrix (include the intercept column explicitly); without
//! them the fitters use an intercept-only design.

use crate::{Error, Result};
use std::collections::HashSet;
use std::io::{Read, Write};
use std::path::Path;

/// Region-level covariates, stored row-major with `p` columns per region.
#[derive(Debug, Clone)]
pub struct Covariates {
    p: usize,
    values: Vec<f64>,
}

impl Covariates {
    pub fn new(p: usize, values: Vec<f64>) -> Result<Self> {
        if p == 0 {
            return Err(Error::Validation("covariate matrix needs p >= 1".into()));
        }
        if values.len() % p != 0 {
            return Err(Error::Validation(format!(
                "covariate value count {} is not a multiple of p = {p}",
                values.len()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Validation("covariates must be finite".into()));
        }
        Ok(Self { p, values })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.values.len() / self.p
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i * self.p..(i + 1) * self.p]
    }
}

/// Event counts and populations per region, aligned with an
/// `AdjacencyGraph` when a spatial model is fitted.
#[derive(Debug, Clone)]
pub struct CountData {
    region_ids: Vec<String>,
    y: Vec<u64>,
    n: Vec<f64>,
    covariates: Option<Covariates>,
}

impl CountData {
    pub fn new(
        region_ids: Vec<String>,
        y: Vec<u64>,
        n: Vec<f64>,
        covariates: Option<Covariates>,
    ) -> Result<Self> {
        if region_ids.is_empty() {
            return Err(Error::Validation("count data must contain at least one region".into()));
        }
        if y.len() != region_ids.len() || n.len() != region_ids.len() {
            return Err(Error::Validation(format!(
                "misaligned columns: {} ids, {} counts, {} populations",
                region_ids.len(),
                y.len(),
                n.len()
            )));
        }
        let mut seen = HashSet::new();
        for id in &region_ids {
            if !seen.insert(id) {
                return Err(Error::Validation(format!("duplicate region id {id:?}")));
            }
        }
        for (id, &ni) in region_ids.iter().zip(&n) {
            if !(ni > 0.0 && ni.is_finite()) {
                return Err(Error::Validation(format!(
                    "region {id:?} has non-positive population {ni}"
                )));
            }
        }
        if let Some(x) = &covariates {
            if x.rows() != region_ids.len() {
                return Err(Error::Validation(format!(
                    "covariate matrix has {} rows for {} regions",
                    x.rows(),
                    region_ids.len()
                )));
            }
        }
        Ok(Self {
            region_ids,
            y,
            n,
            covariates,
        })
    }

    pub fn len(&self) -> usize {
        self.region_ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.region_ids.is_empty()
    }

    pub fn region_ids(&self) -> &[String] {
        &self.region_ids
    }

    pub fn y(&self) -> &[u64] {
        &self.y
    }

    pub fn n(&self) -> &[f64] {
        &self.n
    }

    pub fn covariates(&self) -> Option<&Covariates> {
        self.covariates.as_ref()
    }

    /// Design matrix for regression: the covariates when present, otherwise
    /// an intercept-only column of ones. Returns (p, row-major values).
    pub fn design_matrix(&self) -> (usize, Vec<f64>) {
        match &self.covariates {
            Some(x) => (x.p(), x.values.clone()),
            None => (1, vec![1.0; self.len()]),
        }
    }

    /// Reorders regions by the given permutation (new index -> old index).
    pub fn permuted(&self, order: &[usize]) -> Result<Self> {
        if order.len() != self.len() {
            return Err(Error::Contract("permutation length mismatch".into()));
        }
        let ids = order.iter().map(|&k| self.region_ids[k].clone()).collect();
        let y = order.iter().map(|&k| self.y[k]).collect();
        let n = order.iter().map(|&k| self.n[k]).collect();
        let covariates = match &self.covariates {
            Some(x) => {
                let mut values = Vec::with_capacity(x.values.len());
                for &k in order {
                    values.extend_from_slice(x.row(k));
                }
                Some(Covariates::new(x.p(), values)?)
            }
            None => None,
        };
        Self::new(ids, y, n, covariates)
    }

    pub fn from_csv_path<P: AsRef<Path>>(path: P) -> Result<Self> {
        let file = std::fs::File::open(path.as_ref()).map_err(|e| {
            Error::Validation(format!(
                "cannot open counts file {}: {e}",
                path.as_ref().display()
            ))
        })?;
        Self::from_csv(file)
    }

    pub fn from_csv<R: Read>(reader: R) -> Result<Self> {
        let mut csv = csv::ReaderBuilder::new()
            .has_headers(true)
            .from_reader(reader);
        let p = {
            let headers = csv.headers()?;
            if headers.len() < 3
                || &headers[0] != "region_id"
                || &headers[1] != "y"
                || &headers[2] != "n"
            {
                return Err(Error::Validation(format!(
                    "counts file must start with header region_id,y,n, found {:?}",
                    headers.iter().collect::<Vec<_>>().join(",")
                )));
            }
            headers.len() - 3
        };

        let mut ids = Vec::new();
        let mut y = Vec::new();
        let mut n = Vec::new();
        let mut xs = Vec::new();
        for (row, record) in csv.records().enumerate() {
            let record = record?;
            let context = |field: &str| format!("counts row {} field {field}", row + 1);
            if record.len() != p + 3 {
                return Err(Error::Validation(format!(
                    "counts row {} has {} fields, expected {}",
                    row + 1,
                    record.len(),
                    p + 3
                )));
            }
            ids.push(record[0].trim().to_string());
            y.push(record[1].trim().parse::<u64>().map_err(|e| {
                Error::Validation(format!("{}: {e} (events must be integers >= 0)", context("y")))
            })?);
            n.push(record[2].trim().parse::<f64>().map_err(|e| {
                Error::Validation(format!("{}: {e}", context("n")))
            })?);
            for k in 0..p {
                xs.push(record[3 + k].trim().parse::<f64>().map_err(|e| {
                    Error::Validation(format!("{}: {e}", context(&format!("x{}", k + 1))))
                })?);
            }
        }
        let covariates = if p > 0 { Some(Covariates::new(p, xs)?) } else { None };
        Self::new(ids, y, n, covariates)
    }

    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut csv = csv::Writer::from_writer(writer);
        let p = self.covariates.as_ref().map_or(0, Covariates::p);
        let mut header = vec!["region_id".to_string(), "y".to_string(), "n".to_string()];
        for k in 0..p {
            header.push(format!("x{}", k + 1));
        }
        csv.write_record(&header)?;
        for i in 0..self.len() {
            let mut record = vec![
                self.region_ids[i].clone(),
                self.y[i].to_string(),
                format!("{:.16e}", self.n[i]),
            ];
            if let Some(x) = &self.covariates {
                for v in x.row(i) {
                    record.push(format!("{v:.16e}"));
                }
            }
            csv.write_record(&record)?;
        }
        csv.flush()?;
        Ok(())
    }
}
