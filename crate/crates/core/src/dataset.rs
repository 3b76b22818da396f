//! Column-oriented mixed-type tables, CSV ingestion, schema alignment and
//! min-max / level-index normalisation.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fs::File;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::distance::DistanceKind;
use crate::error::{EvalError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ColumnKind {
    #[serde(rename = "num", alias = "numerical")]
    Numerical,
    #[serde(rename = "cat", alias = "categorical")]
    Categorical,
}

impl ColumnKind {
    pub fn is_numerical(self) -> bool {
        matches!(self, ColumnKind::Numerical)
    }

    pub fn is_categorical(self) -> bool {
        matches!(self, ColumnKind::Categorical)
    }
}

/// Values of one column. Categorical values are stored as indices into
/// `levels`, which lists the distinct values in first-appearance order.
#[derive(Clone, Debug, PartialEq)]
pub enum ColumnData {
    Numerical(Vec<f64>),
    Categorical {
        levels: Vec<String>,
        codes: Vec<u32>,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Column {
    name: String,
    data: ColumnData,
}

impl Column {
    pub fn numerical(name: impl Into<String>, values: Vec<f64>) -> Self {
        Column {
            name: name.into(),
            data: ColumnData::Numerical(values),
        }
    }

    pub fn categorical<I, S>(name: impl Into<String>, values: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut levels: Vec<String> = Vec::new();
        let mut index: HashMap<String, u32> = HashMap::new();
        let codes = values
            .into_iter()
            .map(|v| {
                let v = v.as_ref();
                if let Some(&c) = index.get(v) {
                    c
                } else {
                    let c = levels.len() as u32;
                    levels.push(v.to_string());
                    index.insert(v.to_string(), c);
                    c
                }
            })
            .collect();
        Column {
            name: name.into(),
            data: ColumnData::Categorical { levels, codes },
        }
    }

    /// Builds a categorical column from codes into an explicit level list.
    pub fn from_codes(
        name: impl Into<String>,
        levels: Vec<String>,
        codes: Vec<u32>,
    ) -> Result<Self> {
        let name = name.into();
        if let Some(bad) = codes.iter().find(|&&c| c as usize >= levels.len()) {
            return Err(EvalError::InvalidInput(format!(
                "code {bad} out of range for column `{name}` with {} levels",
                levels.len()
            )));
        }
        Ok(Column {
            name,
            data: ColumnData::Categorical { levels, codes },
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn data(&self) -> &ColumnData {
        &self.data
    }

    pub fn kind(&self) -> ColumnKind {
        match self.data {
            ColumnData::Numerical(_) => ColumnKind::Numerical,
            ColumnData::Categorical { .. } => ColumnKind::Categorical,
        }
    }

    pub fn len(&self) -> usize {
        match &self.data {
            ColumnData::Numerical(v) => v.len(),
            ColumnData::Categorical { codes, .. } => codes.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn as_numerical(&self) -> Option<&[f64]> {
        match &self.data {
            ColumnData::Numerical(v) => Some(v),
            _ => None,
        }
    }

    pub fn as_codes(&self) -> Option<&[u32]> {
        match &self.data {
            ColumnData::Categorical { codes, .. } => Some(codes),
            _ => None,
        }
    }

    pub fn levels(&self) -> Option<&[String]> {
        match &self.data {
            ColumnData::Categorical { levels, .. } => Some(levels),
            _ => None,
        }
    }

    /// Numerical value, or the level code for categorical columns.
    pub fn value_f64(&self, row: usize) -> f64 {
        match &self.data {
            ColumnData::Numerical(v) => v[row],
            ColumnData::Categorical { codes, .. } => f64::from(codes[row]),
        }
    }

    /// Cell rendered as text, as it would appear in a CSV file.
    pub fn value_string(&self, row: usize) -> String {
        match &self.data {
            ColumnData::Numerical(v) => format!("{}", v[row]),
            ColumnData::Categorical { levels, codes } => levels[codes[row] as usize].clone(),
        }
    }

    fn take(&self, rows: &[usize]) -> Column {
        let data = match &self.data {
            ColumnData::Numerical(v) => ColumnData::Numerical(rows.iter().map(|&r| v[r]).collect()),
            ColumnData::Categorical { levels, codes } => ColumnData::Categorical {
                levels: levels.clone(),
                codes: rows.iter().map(|&r| codes[r]).collect(),
            },
        };
        Column {
            name: self.name.clone(),
            data,
        }
    }
}

/// Row-major dense matrix of model features.
#[derive(Clone, Debug, PartialEq)]
pub struct FeatureMatrix {
    n_rows: usize,
    n_cols: usize,
    data: Vec<f64>,
}

impl FeatureMatrix {
    pub fn new(n_rows: usize, n_cols: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != n_rows * n_cols {
            return Err(EvalError::InvalidInput(format!(
                "feature buffer of length {} does not match {n_rows}x{n_cols}",
                data.len()
            )));
        }
        Ok(FeatureMatrix {
            n_rows,
            n_cols,
            data,
        })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n_cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != n_cols) {
            return Err(EvalError::InvalidInput("ragged feature rows".into()));
        }
        Ok(FeatureMatrix {
            n_rows: rows.len(),
            n_cols,
            data: rows.iter().flatten().copied().collect(),
        })
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n_cols..(i + 1) * self.n_cols]
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n_cols + j]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        // chunks_exact(0) panics, so zero-width matrices yield empty rows explicitly
        (0..self.n_rows).map(move |i| self.row(i))
    }

    pub fn take_rows(&self, rows: &[usize]) -> FeatureMatrix {
        let mut data = Vec::with_capacity(rows.len() * self.n_cols);
        for &r in rows {
            data.extend_from_slice(self.row(r));
        }
        FeatureMatrix {
            n_rows: rows.len(),
            n_cols: self.n_cols,
            data,
        }
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &FeatureMatrix) -> Result<FeatureMatrix> {
        if self.n_cols != other.n_cols {
            return Err(EvalError::Schema(format!(
                "cannot stack {} columns onto {}",
                other.n_cols, self.n_cols
            )));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(FeatureMatrix {
            n_rows: self.n_rows + other.n_rows,
            n_cols: self.n_cols,
            data,
        })
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.n_rows).map(|i| self.get(i, j)).collect()
    }
}

/// A validated mixed-type table: equal-length columns with unique names,
/// finite numerical values and no missing cells.
#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    columns: Vec<Column>,
    n_rows: usize,
}

impl Table {
    pub fn new(columns: Vec<Column>) -> Result<Self> {
        let n_rows = columns.first().map_or(0, Column::len);
        let mut seen = HashSet::new();
        for c in &columns {
            if !seen.insert(c.name.as_str()) {
                return Err(EvalError::Schema(format!(
                    "duplicate column name `{}`",
                    c.name
                )));
            }
            if c.len() != n_rows {
                return Err(EvalError::Schema(format!(
                    "column `{}` has {} rows, expected {n_rows}",
                    c.name,
                    c.len()
                )));
            }
            if let ColumnData::Numerical(v) = &c.data {
                if let Some(row) = v.iter().position(|x| !x.is_finite()) {
                    return Err(EvalError::InvalidInput(format!(
                        "non-finite value in numerical column `{}` at row {row}",
                        c.name
                    )));
                }
            }
        }
        Ok(Table { columns, n_rows })
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.columns.len()
    }

    pub fn columns(&self) -> &[Column] {
        &self.columns
    }

    pub fn column(&self, j: usize) -> &Column {
        &self.columns[j]
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c.name == name)
    }

    pub fn column_by_name(&self, name: &str) -> Option<&Column> {
        self.columns.iter().find(|c| c.name == name)
    }

    pub fn names(&self) -> Vec<&str> {
        self.columns.iter().map(|c| c.name.as_str()).collect()
    }

    pub fn kinds(&self) -> Vec<ColumnKind> {
        self.columns.iter().map(Column::kind).collect()
    }

    pub fn numerical_indices(&self) -> Vec<usize> {
        (0..self.n_cols())
            .filter(|&j| self.columns[j].kind().is_numerical())
            .collect()
    }

    pub fn categorical_indices(&self) -> Vec<usize> {
        (0..self.n_cols())
            .filter(|&j| self.columns[j].kind().is_categorical())
            .collect()
    }

    /// New table holding only the given columns, in the given order.
    pub fn select(&self, cols: &[usize]) -> Result<Table> {
        Table::new(cols.iter().map(|&j| self.columns[j].clone()).collect())
    }

    pub fn select_names(&self, names: &[&str]) -> Result<Table> {
        let idx = names
            .iter()
            .map(|n| {
                self.column_index(n)
                    .ok_or_else(|| EvalError::Schema(format!("no column named `{n}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        self.select(&idx)
    }

    /// New table holding the given rows (repeats allowed), level lists kept.
    pub fn take_rows(&self, rows: &[usize]) -> Table {
        Table {
            columns: self.columns.iter().map(|c| c.take(rows)).collect(),
            n_rows: rows.len(),
        }
    }

    /// Stacks `other` below `self`; both must share names, kinds and levels.
    pub fn concat(&self, other: &Table) -> Result<Table> {
        if self.names() != other.names() || self.kinds() != other.kinds() {
            return Err(EvalError::Schema(
                "cannot concatenate tables with different schemas".into(),
            ));
        }
        let columns = self
            .columns
            .iter()
            .zip(&other.columns)
            .map(|(a, b)| match (&a.data, &b.data) {
                (ColumnData::Numerical(x), ColumnData::Numerical(y)) => Ok(Column::numerical(
                    a.name.clone(),
                    x.iter().chain(y).copied().collect(),
                )),
                (
                    ColumnData::Categorical {
                        levels: la,
                        codes: ca,
                    },
                    ColumnData::Categorical {
                        levels: lb,
                        codes: cb,
                    },
                ) => {
                    if la != lb {
                        return Err(EvalError::Schema(format!(
                            "column `{}` has different level universes",
                            a.name
                        )));
                    }
                    Column::from_codes(
                        a.name.clone(),
                        la.clone(),
                        ca.iter().chain(cb).copied().collect(),
                    )
                }
                _ => unreachable!("kinds checked above"),
            })
            .collect::<Result<Vec<_>>>()?;
        Table::new(columns)
    }

    /// Encodes the given columns as features: numerical values as-is,
    /// categorical columns as level codes.
    pub fn to_features(&self, cols: &[usize]) -> FeatureMatrix {
        let n_cols = cols.len();
        let mut data = Vec::with_capacity(self.n_rows * n_cols);
        for i in 0..self.n_rows {
            for &j in cols {
                data.push(self.columns[j].value_f64(i));
            }
        }
        FeatureMatrix {
            n_rows: self.n_rows,
            n_cols,
            data,
        }
    }

    pub fn all_features(&self) -> FeatureMatrix {
        let cols: Vec<usize> = (0..self.n_cols()).collect();
        self.to_features(&cols)
    }

    pub fn write_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let file = File::create(path).map_err(|e| EvalError::io(path, e))?;
        let mut w = csv::Writer::from_writer(file);
        w.write_record(self.names())?;
        for i in 0..self.n_rows {
            w.write_record(self.columns.iter().map(|c| c.value_string(i)))?;
        }
        w.flush().map_err(|e| EvalError::io(path, e))?;
        Ok(())
    }
}

fn parse_finite(cell: &str) -> Option<f64> {
    cell.trim().parse::<f64>().ok().filter(|v| v.is_finite())
}

/// Loads a CSV file with a header row. Columns missing from `declared` are
/// numerical iff every cell parses as a finite number.
pub fn load_csv(
    path: impl AsRef<Path>,
    declared: Option<&BTreeMap<String, ColumnKind>>,
) -> Result<Table> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| EvalError::io(path, e))?;
    read_csv(file, declared)
}

/// Loads a CSV file meant to share the schema of an already loaded table:
/// columns named in `kinds` take that kind, and missing or extra columns
/// are left for [`validate_context`] to report.
pub fn load_csv_matching(
    path: impl AsRef<Path>,
    kinds: &BTreeMap<String, ColumnKind>,
) -> Result<Table> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| EvalError::io(path, e))?;
    parse_csv(file, Some(kinds), false)
}

pub fn read_csv<R: std::io::Read>(
    reader: R,
    declared: Option<&BTreeMap<String, ColumnKind>>,
) -> Result<Table> {
    parse_csv(reader, declared, true)
}

fn parse_csv<R: std::io::Read>(
    reader: R,
    declared: Option<&BTreeMap<String, ColumnKind>>,
    strict: bool,
) -> Result<Table> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(reader);
    let header: Vec<String> = rdr
        .headers()?
        .iter()
        .map(|h| h.trim().to_string())
        .collect();
    if header.is_empty() || header.iter().all(String::is_empty) {
        return Err(EvalError::InvalidInput("csv file has no header".into()));
    }
    if let Some(decl) = declared.filter(|_| strict) {
        if let Some(unknown) = decl.keys().find(|k| !header.contains(k)) {
            return Err(EvalError::Schema(format!(
                "declared kind for column `{unknown}` which is not in the file"
            )));
        }
    }

    let mut cells: Vec<Vec<String>> = vec![Vec::new(); header.len()];
    for (row, record) in rdr.records().enumerate() {
        let record = record?;
        for (j, cell) in record.iter().enumerate() {
            let cell = cell.trim();
            if cell.is_empty() {
                return Err(EvalError::MissingValue {
                    column: header[j].clone(),
                    row,
                });
            }
            cells[j].push(cell.to_string());
        }
    }

    let columns = header
        .into_iter()
        .zip(cells)
        .map(|(name, values)| {
            let kind = declared.and_then(|d| d.get(&name).copied());
            build_column(name, values, kind)
        })
        .collect::<Result<Vec<_>>>()?;
    Table::new(columns)
}

fn build_column(name: String, values: Vec<String>, kind: Option<ColumnKind>) -> Result<Column> {
    match kind {
        Some(ColumnKind::Categorical) => Ok(Column::categorical(name, values)),
        Some(ColumnKind::Numerical) => {
            let parsed = values
                .iter()
                .enumerate()
                .map(|(row, v)| {
                    parse_finite(v).ok_or_else(|| EvalError::KindConflict {
                        column: name.clone(),
                        row,
                        value: v.clone(),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Column::numerical(name, parsed))
        }
        None => {
            let parsed: Option<Vec<f64>> = values.iter().map(|v| parse_finite(v)).collect();
            Ok(match parsed {
                Some(v) => Column::numerical(name, v),
                None => Column::categorical(name, values),
            })
        }
    }
}

/// Reads a `{column: "num"|"cat"}` JSON map.
pub fn load_kinds_json(path: impl AsRef<Path>) -> Result<BTreeMap<String, ColumnKind>> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| EvalError::io(path, e))?;
    Ok(serde_json::from_str(&text)?)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ColumnNorm {
    Numerical { min: f64, max: f64 },
    Categorical { levels: Vec<String> },
}

/// Per-column min/max (numerical) and level universe (categorical).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormalizationSpec {
    names: Vec<String>,
    columns: Vec<ColumnNorm>,
}

impl NormalizationSpec {
    /// Ranges from `reference` only; level universe is the first-appearance
    /// union over `reference` followed by `others`.
    pub fn fit(reference: &Table, others: &[&Table]) -> Result<Self> {
        Self::build(reference, others, false)
    }

    /// Ranges and levels pooled over every table.
    pub fn fit_pooled(reference: &Table, others: &[&Table]) -> Result<Self> {
        Self::build(reference, others, true)
    }

    fn build(reference: &Table, others: &[&Table], pooled_ranges: bool) -> Result<Self> {
        let mut names = Vec::with_capacity(reference.n_cols());
        let mut columns = Vec::with_capacity(reference.n_cols());
        for col in reference.columns() {
            let peers = others
                .iter()
                .map(|t| {
                    t.column_by_name(col.name()).ok_or_else(|| {
                        EvalError::Schema(format!("column `{}` missing from a table", col.name()))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            let norm = match col.data() {
                ColumnData::Numerical(v) => {
                    let mut lo = v.iter().copied().fold(f64::INFINITY, f64::min);
                    let mut hi = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                    if pooled_ranges {
                        for p in &peers {
                            let pv = p.as_numerical().ok_or_else(|| kind_mismatch(col.name()))?;
                            lo = pv.iter().copied().fold(lo, f64::min);
                            hi = pv.iter().copied().fold(hi, f64::max);
                        }
                    }
                    if !lo.is_finite() {
                        lo = 0.0;
                        hi = 0.0;
                    }
                    ColumnNorm::Numerical { min: lo, max: hi }
                }
                ColumnData::Categorical { levels, codes } => {
                    let mut universe: Vec<String> = Vec::new();
                    let mut seen: HashSet<String> = HashSet::new();
                    let mut push_used = |levels: &[String], codes: &[u32]| {
                        // first appearance by row, not by the table's level list
                        for &c in codes {
                            let l = &levels[c as usize];
                            if seen.insert(l.clone()) {
                                universe.push(l.clone());
                            }
                        }
                        for l in levels {
                            if seen.insert(l.clone()) {
                                universe.push(l.clone());
                            }
                        }
                    };
                    push_used(levels, codes);
                    for p in &peers {
                        match p.data() {
                            ColumnData::Categorical { levels, codes } => push_used(levels, codes),
                            _ => return Err(kind_mismatch(col.name())),
                        }
                    }
                    ColumnNorm::Categorical { levels: universe }
                }
            };
            names.push(col.name().to_string());
            columns.push(norm);
        }
        Ok(NormalizationSpec { names, columns })
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn columns(&self) -> &[ColumnNorm] {
        &self.columns
    }

    pub fn get(&self, name: &str) -> Option<&ColumnNorm> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|j| &self.columns[j])
    }

    /// `max - min` for a numerical column.
    pub fn range(&self, name: &str) -> Option<f64> {
        match self.get(name)? {
            ColumnNorm::Numerical { min, max } => Some(max - min),
            ColumnNorm::Categorical { .. } => None,
        }
    }

    pub fn levels(&self, name: &str) -> Option<&[String]> {
        match self.get(name)? {
            ColumnNorm::Categorical { levels } => Some(levels),
            ColumnNorm::Numerical { .. } => None,
        }
    }
}

fn kind_mismatch(name: &str) -> EvalError {
    EvalError::Schema(format!("column `{name}` has different kinds across tables"))
}

fn spec_entry<'a>(spec: &'a NormalizationSpec, col: &Column) -> Result<&'a ColumnNorm> {
    spec.get(col.name()).ok_or_else(|| {
        EvalError::Schema(format!("normalization spec has no column `{}`", col.name()))
    })
}

fn recode_into(col: &Column, universe: &[String]) -> Result<Column> {
    let ColumnData::Categorical { levels, codes } = col.data() else {
        return Err(kind_mismatch(col.name()));
    };
    let index: HashMap<&str, u32> = universe
        .iter()
        .enumerate()
        .map(|(i, l)| (l.as_str(), i as u32))
        .collect();
    let map = levels
        .iter()
        .map(|l| {
            index
                .get(l.as_str())
                .copied()
                .ok_or_else(|| EvalError::UnknownLevel {
                    column: col.name().to_string(),
                    level: l.clone(),
                })
        })
        .collect::<Result<Vec<_>>>()?;
    Column::from_codes(
        col.name(),
        universe.to_vec(),
        codes.iter().map(|&c| map[c as usize]).collect(),
    )
}

/// Re-expresses categorical codes in the spec's level universe, leaving
/// numerical values untouched.
pub fn recode(table: &Table, spec: &NormalizationSpec) -> Result<Table> {
    let columns = table
        .columns()
        .iter()
        .map(|col| match spec_entry(spec, col)? {
            ColumnNorm::Categorical { levels } => recode_into(col, levels),
            ColumnNorm::Numerical { .. } => match col.data() {
                ColumnData::Numerical(_) => Ok(col.clone()),
                _ => Err(kind_mismatch(col.name())),
            },
        })
        .collect::<Result<Vec<_>>>()?;
    Table::new(columns)
}

/// Maps numerical values to `(v - min) / (max - min)` (constant columns to
/// 0) and categorical values to spec level indices. No clipping is applied.
pub fn normalize(table: &Table, spec: &NormalizationSpec) -> Result<Table> {
    let columns = table
        .columns()
        .iter()
        .map(|col| match spec_entry(spec, col)? {
            ColumnNorm::Categorical { levels } => recode_into(col, levels),
            &ColumnNorm::Numerical { min, max } => {
                let v = col
                    .as_numerical()
                    .ok_or_else(|| kind_mismatch(col.name()))?;
                let range = max - min;
                let scaled = if range > 0.0 {
                    v.iter().map(|x| (x - min) / range).collect()
                } else {
                    vec![0.0; v.len()]
                };
                Ok(Column::numerical(col.name(), scaled))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Table::new(columns)
}

/// Inverse of [`normalize`] for non-constant numerical columns.
pub fn denormalize(table: &Table, spec: &NormalizationSpec) -> Result<Table> {
    let columns = table
        .columns()
        .iter()
        .map(|col| match spec_entry(spec, col)? {
            ColumnNorm::Categorical { .. } => Ok(col.clone()),
            &ColumnNorm::Numerical { min, max } => {
                let v = col
                    .as_numerical()
                    .ok_or_else(|| kind_mismatch(col.name()))?;
                let range = max - min;
                Ok(Column::numerical(
                    col.name(),
                    v.iter().map(|x| min + x * range).collect(),
                ))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Table::new(columns)
}

/// Aligned real / synthetic / holdout tables plus evaluation settings.
///
/// All tables share the real table's column order and one categorical level
/// universe, so level codes are comparable across them.
#[derive(Clone, Debug)]
pub struct EvalContext {
    real: Table,
    synthetic: Table,
    holdout: Option<Table>,
    target: Option<String>,
    seed: u64,
    distance: DistanceKind,
    spec: NormalizationSpec,
    real_norm: Table,
    synthetic_norm: Table,
    holdout_norm: Option<Table>,
}

fn align_to(reference: &Table, other: &Table, role: &str) -> Result<Table> {
    let ref_names: HashSet<&str> = reference.names().into_iter().collect();
    let other_names: HashSet<&str> = other.names().into_iter().collect();
    let mut missing: Vec<&str> = reference
        .names()
        .into_iter()
        .filter(|n| !other_names.contains(n))
        .collect();
    let mut extra: Vec<&str> = other
        .names()
        .into_iter()
        .filter(|n| !ref_names.contains(n))
        .collect();
    if !missing.is_empty() || !extra.is_empty() {
        missing.sort_unstable();
        extra.sort_unstable();
        let mut msg = format!("{role} table columns do not match the real table");
        if !missing.is_empty() {
            msg.push_str(&format!("; missing: {}", missing.join(", ")));
        }
        if !extra.is_empty() {
            msg.push_str(&format!("; unexpected: {}", extra.join(", ")));
        }
        return Err(EvalError::Schema(msg));
    }
    let aligned = other.select_names(&reference.names())?;
    for (a, b) in reference.columns().iter().zip(aligned.columns()) {
        if a.kind() != b.kind() {
            return Err(EvalError::Schema(format!(
                "column `{}` is {:?} in the real table but {:?} in the {role} table",
                a.name(),
                a.kind(),
                b.kind()
            )));
        }
    }
    Ok(aligned)
}

/// Aligns schemas by name, unifies categorical level universes and checks
/// the target column.
pub fn validate_context(
    real: Table,
    synthetic: Table,
    holdout: Option<Table>,
    target: Option<&str>,
) -> Result<EvalContext> {
    if real.n_cols() == 0 {
        return Err(EvalError::InvalidInput("real table has no columns".into()));
    }
    if real.n_rows() == 0 || synthetic.n_rows() == 0 {
        return Err(EvalError::InsufficientData(
            "real and synthetic tables must be non-empty".into(),
        ));
    }
    let synthetic = align_to(&real, &synthetic, "synthetic")?;
    let holdout = holdout
        .map(|h| align_to(&real, &h, "holdout"))
        .transpose()?;
    if let Some(t) = target {
        match real.column_by_name(t) {
            None => return Err(EvalError::Schema(format!("target column `{t}` not found"))),
            Some(c) if c.kind().is_numerical() => {
                return Err(EvalError::Schema(format!(
                    "target must be categorical; `{t}` is numerical"
                )))
            }
            Some(_) => {}
        }
    }

    let mut others = vec![&synthetic];
    others.extend(holdout.as_ref());
    let spec = NormalizationSpec::fit(&real, &others)?;
    let real = recode(&real, &spec)?;
    let synthetic = recode(&synthetic, &spec)?;
    let holdout = holdout.map(|h| recode(&h, &spec)).transpose()?;
    let real_norm = normalize(&real, &spec)?;
    let synthetic_norm = normalize(&synthetic, &spec)?;
    let holdout_norm = holdout.as_ref().map(|h| normalize(h, &spec)).transpose()?;

    Ok(EvalContext {
        real,
        synthetic,
        holdout,
        target: target.map(str::to_string),
        seed: 0,
        distance: DistanceKind::Gower,
        spec,
        real_norm,
        synthetic_norm,
        holdout_norm,
    })
}

impl EvalContext {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_distance(mut self, distance: DistanceKind) -> Self {
        self.distance = distance;
        self
    }

    pub fn real(&self) -> &Table {
        &self.real
    }

    pub fn synthetic(&self) -> &Table {
        &self.synthetic
    }

    pub fn holdout(&self) -> Option<&Table> {
        self.holdout.as_ref()
    }

    pub fn target(&self) -> Option<&str> {
        self.target.as_deref()
    }

    pub fn target_index(&self) -> Option<usize> {
        self.target
            .as_deref()
            .and_then(|t| self.real.column_index(t))
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn distance(&self) -> DistanceKind {
        self.distance
    }

    pub fn spec(&self) -> &NormalizationSpec {
        &self.spec
    }

    pub fn real_norm(&self) -> &Table {
        &self.real_norm
    }

    pub fn synthetic_norm(&self) -> &Table {
        &self.synthetic_norm
    }

    pub fn holdout_norm(&self) -> Option<&Table> {
        self.holdout_norm.as_ref()
    }

    pub fn names(&self) -> Vec<&str> {
        self.real.names()
    }

    pub fn kinds(&self) -> Vec<ColumnKind> {
        self.real.kinds()
    }

    /// Numerical ranges from the real table, in column order (0 for
    /// categorical columns).
    pub fn ranges(&self) -> Vec<f64> {
        self.spec
            .columns()
            .iter()
            .map(|c| match c {
                ColumnNorm::Numerical { min, max } => max - min,
                ColumnNorm::Categorical { .. } => 0.0,
            })
            .collect()
    }
}
