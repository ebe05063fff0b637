//! Dense matrices over a finite field.
//!
//! Binary matrices keep each row as a packed [`BitVec`]; other fields store
//! element indices row-major. Row reduction chooses the leftmost remaining
//! column and the topmost row with a nonzero entry in it, so every reduced
//! form is deterministic.

use std::fmt;

use thiserror::Error;

use crate::galois::FieldSpec;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatError {
    #[error("{op}: incompatible shapes {left:?} and {right:?}")]
    Shape {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("matrices are over different fields")]
    FieldMismatch,
    #[error("entry {value} at ({row}, {col}) is not an element of GF({q})")]
    EntryOutOfRange {
        row: usize,
        col: usize,
        value: u64,
        q: u32,
    },
    #[error("rows have different lengths ({expected} and {found} at row {row})")]
    Ragged {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("line {line}, column {col}: {msg}")]
    Parse {
        line: usize,
        col: usize,
        msg: String,
    },
}

pub type Result<T> = std::result::Result<T, MatError>;

/// A fixed-length bit vector packed into 64-bit words.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    pub fn from_support(len: usize, support: &[usize]) -> Self {
        let mut v = Self::zeros(len);
        for &i in support {
            v.set(i, true);
        }
        v
    }

    /// Bits taken from the low end of a word, bit i = (w >> i) & 1.
    pub fn from_word(len: usize, w: u64) -> Self {
        let mut v = Self::zeros(len);
        if len > 0 {
            v.words[0] = if len >= 64 {
                w
            } else {
                w & ((1u64 << len) - 1)
            };
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i >> 6] >> (i & 63) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i & 63);
        if value {
            self.words[i >> 6] |= mask;
        } else {
            self.words[i >> 6] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i >> 6] ^= 1u64 << (i & 63);
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &BitVec) -> BitVec {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    /// Inner product over GF(2).
    pub fn dot(&self, other: &BitVec) -> bool {
        debug_assert_eq!(self.len, other.len);
        let ones: u32 = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        ones & 1 == 1
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * 64 + b)
                }
            })
        })
    }

    pub fn first_one(&self) -> Option<usize> {
        self.support().next()
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn to_u32s(&self) -> Vec<u32> {
        (0..self.len).map(|i| self.get(i) as u32).collect()
    }

    pub fn from_u32s(values: &[u32]) -> Self {
        let mut v = Self::zeros(values.len());
        for (i, &x) in values.iter().enumerate() {
            if x & 1 == 1 {
                v.set(i, true);
            }
        }
        v
    }

    /// Bits [start, start + len) as a new vector.
    pub fn slice(&self, start: usize, len: usize) -> BitVec {
        let mut out = BitVec::zeros(len);
        for i in 0..len {
            if self.get(start + i) {
                out.set(i, true);
            }
        }
        out
    }
}

#[derive(Clone, PartialEq, Eq)]
enum Storage {
    Binary(Vec<BitVec>),
    Dense(Vec<u32>),
}

/// A matrix with entries in a finite field.
#[derive(Clone, PartialEq, Eq)]
pub struct MatrixGF {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Storage,
}

impl fmt::Debug for MatrixGF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "MatrixGF over GF({}) {}x{}",
            self.field.size(),
            self.rows,
            self.cols
        )?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|v| v.to_string()).collect();
            writeln!(f, "  [{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// Text form: header `q rows cols`, then one line of entries per row.
impl fmt::Display for MatrixGF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {} {}", self.field.size(), self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|v| v.to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

impl MatrixGF {
    pub fn zeros(field: &FieldSpec, rows: usize, cols: usize) -> Self {
        let data = if field.is_binary() {
            Storage::Binary(vec![BitVec::zeros(cols); rows])
        } else {
            Storage::Dense(vec![0; rows * cols])
        };
        MatrixGF {
            field: field.clone(),
            rows,
            cols,
            data,
        }
    }

    pub fn identity(field: &FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(field: &FieldSpec, rows: &[Vec<u32>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows_with_cols(field, rows, cols)
    }

    /// Like [`MatrixGF::from_rows`] but keeps the column count when there are no rows.
    pub fn from_rows_with_cols(field: &FieldSpec, rows: &[Vec<u32>], cols: usize) -> Result<Self> {
        let mut m = Self::zeros(field, rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(MatError::Ragged {
                    row: r,
                    expected: cols,
                    found: row.len(),
                });
            }
            for (c, &v) in row.iter().enumerate() {
                if v >= field.size() {
                    return Err(MatError::EntryOutOfRange {
                        row: r,
                        col: c,
                        value: v as u64,
                        q: field.size(),
                    });
                }
                if v != 0 {
                    m.set(r, c, v);
                }
            }
        }
        Ok(m)
    }

    pub fn from_bitvecs(rows: Vec<BitVec>, cols: usize) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "row length mismatch");
        MatrixGF {
            field: FieldSpec::binary(),
            rows: rows.len(),
            cols,
            data: Storage::Binary(rows),
        }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        assert!(
            r < self.rows && c < self.cols,
            "index ({r}, {c}) out of bounds"
        );
        match &self.data {
            Storage::Binary(rows) => rows[r].get(c) as u32,
            Storage::Dense(d) => d[r * self.cols + c],
        }
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        assert!(
            r < self.rows && c < self.cols,
            "index ({r}, {c}) out of bounds"
        );
        debug_assert!(v < self.field.size());
        match &mut self.data {
            Storage::Binary(rows) => rows[r].set(c, v == 1),
            Storage::Dense(d) => d[r * self.cols + c] = v,
        }
    }

    pub fn row(&self, r: usize) -> Vec<u32> {
        match &self.data {
            Storage::Binary(rows) => rows[r].to_u32s(),
            Storage::Dense(d) => d[r * self.cols..(r + 1) * self.cols].to_vec(),
        }
    }

    pub fn column(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r)).collect()
    }

    /// Packed rows of a binary matrix.
    pub fn bit_rows(&self) -> Option<&[BitVec]> {
        match &self.data {
            Storage::Binary(rows) => Some(rows),
            Storage::Dense(_) => None,
        }
    }

    pub fn into_bit_rows(self) -> Option<Vec<BitVec>> {
        match self.data {
            Storage::Binary(rows) => Some(rows),
            Storage::Dense(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.data {
            Storage::Binary(rows) => rows.iter().all(BitVec::is_zero),
            Storage::Dense(d) => d.iter().all(|&v| v == 0),
        }
    }

    /// Number of nonzero entries in row r.
    pub fn row_weight(&self, r: usize) -> usize {
        match &self.data {
            Storage::Binary(rows) => rows[r].weight(),
            Storage::Dense(d) => d[r * self.cols..(r + 1) * self.cols]
                .iter()
                .filter(|&&v| v != 0)
                .count(),
        }
    }

    pub fn column_weight(&self, c: usize) -> usize {
        (0..self.rows).filter(|&r| self.get(r, c) != 0).count()
    }

    fn check_field(&self, other: &MatrixGF) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(MatError::FieldMismatch)
        }
    }

    pub fn transpose(&self) -> MatrixGF {
        let mut t = MatrixGF::zeros(&self.field, self.cols, self.rows);
        match &self.data {
            Storage::Binary(rows) => {
                for (r, row) in rows.iter().enumerate() {
                    for c in row.support() {
                        t.set(c, r, 1);
                    }
                }
            }
            Storage::Dense(_) => {
                for r in 0..self.rows {
                    for c in 0..self.cols {
                        let v = self.get(r, c);
                        if v != 0 {
                            t.set(c, r, v);
                        }
                    }
                }
            }
        }
        t
    }

    pub fn mul(&self, other: &MatrixGF) -> Result<MatrixGF> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(MatError::Shape {
                op: "mul",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let mut out = MatrixGF::zeros(&self.field, self.rows, other.cols);
        match (&self.data, &other.data, &mut out.data) {
            (Storage::Binary(a), Storage::Binary(b), Storage::Binary(o)) => {
                for (i, row) in a.iter().enumerate() {
                    for k in row.support() {
                        o[i].xor_assign(&b[k]);
                    }
                }
            }
            _ => {
                let f = &self.field;
                for i in 0..self.rows {
                    for k in 0..self.cols {
                        let a = self.get(i, k);
                        if a == 0 {
                            continue;
                        }
                        for j in 0..other.cols {
                            let b = other.get(k, j);
                            if b != 0 {
                                let v = f.add(out.get(i, j), f.mul(a, b));
                                out.set(i, j, v);
                            }
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// M·v for a column vector v.
    pub fn mul_vec(&self, v: &[u32]) -> Result<Vec<u32>> {
        if v.len() != self.cols {
            return Err(MatError::Shape {
                op: "mul_vec",
                left: self.shape(),
                right: (v.len(), 1),
            });
        }
        let f = &self.field;
        Ok((0..self.rows)
            .map(|r| {
                (0..self.cols).fold(0, |acc, c| {
                    let a = self.get(r, c);
                    if a == 0 || v[c] == 0 {
                        acc
                    } else {
                        f.add(acc, f.mul(a, v[c]))
                    }
                })
            })
            .collect())
    }

    /// M·v over GF(2), one output bit per row.
    pub fn mul_bits(&self, v: &BitVec) -> BitVec {
        let rows = self.bit_rows().expect("mul_bits needs a binary matrix");
        assert_eq!(v.len(), self.cols, "vector length");
        let mut out = BitVec::zeros(self.rows);
        for (r, row) in rows.iter().enumerate() {
            if row.dot(v) {
                out.set(r, true);
            }
        }
        out
    }

    /// vᵀ·M for a row vector v.
    pub fn vec_mul(&self, v: &[u32]) -> Result<Vec<u32>> {
        if v.len() != self.rows {
            return Err(MatError::Shape {
                op: "vec_mul",
                left: (1, v.len()),
                right: self.shape(),
            });
        }
        let f = &self.field;
        let mut out = vec![0u32; self.cols];
        for (r, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (c, o) in out.iter_mut().enumerate() {
                let b = self.get(r, c);
                if b != 0 {
                    *o = f.add(*o, f.mul(a, b));
                }
            }
        }
        Ok(out)
    }

    pub fn hstack(&self, other: &MatrixGF) -> Result<MatrixGF> {
        self.check_field(other)?;
        if self.rows != other.rows {
            return Err(MatError::Shape {
                op: "hstack",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let mut out = MatrixGF::zeros(&self.field, self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c));
            }
            for c in 0..other.cols {
                out.set(r, self.cols + c, other.get(r, c));
            }
        }
        Ok(out)
    }

    pub fn vstack(&self, other: &MatrixGF) -> Result<MatrixGF> {
        self.check_field(other)?;
        if self.cols != other.cols {
            return Err(MatError::Shape {
                op: "vstack",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let mut data = self.data.clone();
        match (&mut data, &other.data) {
            (Storage::Binary(a), Storage::Binary(b)) => a.extend(b.iter().cloned()),
            (Storage::Dense(a), Storage::Dense(b)) => a.extend_from_slice(b),
            _ => return Err(MatError::FieldMismatch),
        }
        Ok(MatrixGF {
            field: self.field.clone(),
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn select_rows(&self, idx: &[usize]) -> MatrixGF {
        let mut out = MatrixGF::zeros(&self.field, idx.len(), self.cols);
        for (i, &r) in idx.iter().enumerate() {
            out.copy_row_from(i, self, r);
        }
        out
    }

    pub fn select_cols(&self, idx: &[usize]) -> MatrixGF {
        let mut out = MatrixGF::zeros(&self.field, self.rows, idx.len());
        for r in 0..self.rows {
            for (j, &c) in idx.iter().enumerate() {
                let v = self.get(r, c);
                if v != 0 {
                    out.set(r, j, v);
                }
            }
        }
        out
    }

    fn copy_row_from(&mut self, dst: usize, src: &MatrixGF, r: usize) {
        match (&mut self.data, &src.data) {
            (Storage::Binary(a), Storage::Binary(b)) => a[dst] = b[r].clone(),
            (Storage::Dense(a), Storage::Dense(b)) => {
                let c = self.cols;
                a[dst * c..(dst + 1) * c].copy_from_slice(&b[r * c..(r + 1) * c]);
            }
            _ => unreachable!("same field implies same storage"),
        }
    }

    /// Block-diagonal I_n ⊗ M.
    pub fn kron_identity(&self, n: usize) -> MatrixGF {
        let mut out = MatrixGF::zeros(&self.field, n * self.rows, n * self.cols);
        for b in 0..n {
            for r in 0..self.rows {
                for c in 0..self.cols {
                    let v = self.get(r, c);
                    if v != 0 {
                        out.set(b * self.rows + r, b * self.cols + c, v);
                    }
                }
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        match &mut self.data {
            Storage::Binary(rows) => rows.swap(a, b),
            Storage::Dense(d) => {
                for c in 0..self.cols {
                    d.swap(a * self.cols + c, b * self.cols + c);
                }
            }
        }
    }

    fn scale_row(&mut self, r: usize, s: u32) {
        if let Storage::Dense(d) = &mut self.data {
            for v in &mut d[r * self.cols..(r + 1) * self.cols] {
                *v = self.field.mul(*v, s);
            }
        }
    }

    /// row[dst] -= factor · row[src]
    fn eliminate(&mut self, dst: usize, src: usize, factor: u32) {
        match &mut self.data {
            Storage::Binary(rows) => {
                let (s, d) = if src < dst {
                    let (lo, hi) = rows.split_at_mut(dst);
                    (&lo[src], &mut hi[0])
                } else {
                    let (lo, hi) = rows.split_at_mut(src);
                    (&hi[0], &mut lo[dst])
                };
                d.xor_assign(s);
            }
            Storage::Dense(d) => {
                let f = &self.field;
                let cols = self.cols;
                for c in 0..cols {
                    let sv = d[src * cols + c];
                    if sv != 0 {
                        let cur = d[dst * cols + c];
                        d[dst * cols + c] = f.sub(cur, f.mul(factor, sv));
                    }
                }
            }
        }
    }

    /// Reduced row echelon form and the pivot columns, one per nonzero row.
    pub fn rref(&self) -> (MatrixGF, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| m.get(r, col) != 0) else {
                continue;
            };
            m.swap_rows(row, p);
            let lead = m.get(row, col);
            if lead != 1 {
                m.scale_row(row, m.field.inv(lead).expect("nonzero pivot"));
            }
            for r in 0..m.rows {
                if r != row {
                    let v = m.get(r, col);
                    if v != 0 {
                        m.eliminate(r, row, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right nullspace {x : M·x = 0}, one vector per row.
    pub fn nullspace(&self) -> MatrixGF {
        let (r, pivots) = self.rref();
        let f = &self.field;
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut out = MatrixGF::zeros(f, free.len(), self.cols);
        for (i, &fc) in free.iter().enumerate() {
            out.set(i, fc, 1);
            for (pr, &pc) in pivots.iter().enumerate() {
                let v = r.get(pr, fc);
                if v != 0 {
                    out.set(i, pc, f.neg(v));
                }
            }
        }
        out
    }

    /// Nonzero rows of the reduced form: a canonical basis of the row space.
    pub fn row_basis(&self) -> MatrixGF {
        let (r, pivots) = self.rref();
        r.select_rows(&(0..pivots.len()).collect::<Vec<_>>())
    }

    /// Standard form [I_k | P] of the row space with the column permutation
    /// used: column j of the result is column `perm[j]` of the reduced matrix.
    pub fn standard_form(&self) -> (MatrixGF, Vec<usize>) {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut perm = pivots.clone();
        perm.extend((0..self.cols).filter(|&c| !is_pivot[c]));
        let basis = r.select_rows(&(0..pivots.len()).collect::<Vec<_>>());
        (basis.select_cols(&perm), perm)
    }

    pub fn parse(text: &str) -> Result<MatrixGF> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| {
            let t = l.trim();
            !t.is_empty() && !t.starts_with('#')
        });
        let (hline, header) = lines.next().ok_or(MatError::Parse {
            line: 1,
            col: 1,
            msg: "missing header `q rows cols`".into(),
        })?;
        let nums = parse_numbers(header, hline + 1)?;
        if nums.len() != 3 {
            return Err(MatError::Parse {
                line: hline + 1,
                col: 1,
                msg: format!("header needs 3 numbers, found {}", nums.len()),
            });
        }
        let field = FieldSpec::gf(nums[0].0).map_err(|e| MatError::Parse {
            line: hline + 1,
            col: nums[0].1,
            msg: e.to_string(),
        })?;
        let (rows, cols) = (nums[1].0 as usize, nums[2].0 as usize);
        let mut out = MatrixGF::zeros(&field, rows, cols);
        for r in 0..rows {
            let (ln, line) = lines.next().ok_or(MatError::Parse {
                line: text.lines().count() + 1,
                col: 1,
                msg: format!("expected {rows} rows, found {r}"),
            })?;
            let vals = parse_numbers(line, ln + 1)?;
            if vals.len() != cols {
                return Err(MatError::Parse {
                    line: ln + 1,
                    col: 1,
                    msg: format!("expected {cols} entries, found {}", vals.len()),
                });
            }
            for (c, &(v, col)) in vals.iter().enumerate() {
                if v >= field.size() as u64 {
                    return Err(MatError::Parse {
                        line: ln + 1,
                        col,
                        msg: format!("{v} is not an element of GF({})", field.size()),
                    });
                }
                if v != 0 {
                    out.set(r, c, v as u32);
                }
            }
        }
        if let Some((ln, _)) = lines.next() {
            return Err(MatError::Parse {
                line: ln + 1,
                col: 1,
                msg: "unexpected extra row".into(),
            });
        }
        Ok(out)
    }
}

/// Whitespace-separated unsigned integers with their 1-based columns.
pub(crate) fn parse_numbers(line: &str, lineno: usize) -> Result<Vec<(u64, usize)>> {
    let mut out = Vec::new();
    let mut start = None;
    let bytes = line.as_bytes();
    for i in 0..=bytes.len() {
        let ws = i == bytes.len() || bytes[i].is_ascii_whitespace();
        match (start, ws) {
            (None, false) => start = Some(i),
            (Some(s), true) => {
                let tok = &line[s..i];
                let v = tok.parse::<u64>().map_err(|_| MatError::Parse {
                    line: lineno,
                    col: s + 1,
                    msg: format!("`{tok}` is not a non-negative integer"),
                })?;
                out.push((v, s + 1));
                start = None;
            }
            _ => {}
        }
    }
    Ok(out)
}

/// A row space kept in reduced form for membership tests and residuals.
#[derive(Clone, Debug)]
pub struct RowSpace {
    basis: MatrixGF,
    pivots: Vec<usize>,
}

impl RowSpace {
    pub fn new(m: &MatrixGF) -> Self {
        let (r, pivots) = m.rref();
        let basis = r.select_rows(&(0..pivots.len()).collect::<Vec<_>>());
        RowSpace { basis, pivots }
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn basis(&self) -> &MatrixGF {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// v minus its component along the basis; zero exactly when v is in the space.
    pub fn residual(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.basis.cols(), "vector length");
        let f = self.basis.field();
        let mut v = v.to_vec();
        for (i, &p) in self.pivots.iter().enumerate() {
            let coef = v[p];
            if coef != 0 {
                for (c, x) in v.iter_mut().enumerate() {
                    let b = self.basis.get(i, c);
                    if b != 0 {
                        *x = f.sub(*x, f.mul(coef, b));
                    }
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.residual(v).iter().all(|&x| x == 0)
    }

    pub fn residual_bits(&self, v: &BitVec) -> BitVec {
        let rows = self.basis.bit_rows().expect("binary row space");
        let mut v = v.clone();
        for (row, &p) in rows.iter().zip(&self.pivots) {
            if v.get(p) {
                v.xor_assign(row);
            }
        }
        v
    }

    pub fn contains_bits(&self, v: &BitVec) -> bool {
        self.residual_bits(v).is_zero()
    }
}
