//! Power-balanced orthogonal space-time block codes.

use crate::{HetNetError, Result};

/// One non-zero entry of a codeword matrix: `sign · s_symbol` or its conjugate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CodeEntry {
    pub symbol: usize,
    pub conj: bool,
    pub sign: f64,
}

const fn e(symbol: usize, conj: bool, sign: f64) -> Option<CodeEntry> {
    Some(CodeEntry { symbol, conj, sign })
}

/// An `(M, L, r)` OSTBC carrying `S = L·r` symbols per codeword. In every
/// slot exactly `S` antennas are active, each with power `P/S`.
#[derive(Debug, Clone, PartialEq)]
pub struct OstbcCode {
    name: String,
    m_tx: u32,
    codeword_len: u32,
    rate: f64,
    s_active: u32,
    symbols: usize,
    pattern: Vec<Vec<bool>>,
    matrix: Option<Vec<Vec<Option<CodeEntry>>>>,
}

impl OstbcCode {
    /// Single antenna, `(1, 1, 1)`.
    pub fn siso() -> Self {
        Self::from_matrix("1x1", 1, vec![vec![e(0, false, 1.0)]])
    }

    /// Alamouti, `(2, 2, 1)`.
    pub fn alamouti() -> Self {
        Self::from_matrix(
            "2x2",
            2,
            vec![
                vec![e(0, false, 1.0), e(1, false, 1.0)],
                vec![e(1, true, -1.0), e(0, true, 1.0)],
            ],
        )
    }

    /// Four antennas, rate 1/2: two Alamouti blocks on disjoint antenna pairs, `(4, 4, 1/2)`.
    pub fn ostbc4_half() -> Self {
        Self::from_matrix(
            "4x4-1/2",
            2,
            vec![
                vec![e(0, false, 1.0), e(1, false, 1.0), None, None],
                vec![e(1, true, -1.0), e(0, true, 1.0), None, None],
                vec![None, None, e(0, false, 1.0), e(1, false, 1.0)],
                vec![None, None, e(1, true, -1.0), e(0, true, 1.0)],
            ],
        )
    }

    /// Four antennas, rate 3/4, `(4, 4, 3/4)`; one antenna idle per slot.
    pub fn ostbc4_three_quarter() -> Self {
        Self::from_matrix(
            "4x4-3/4",
            3,
            vec![
                vec![e(0, false, 1.0), e(1, false, 1.0), e(2, false, 1.0), None],
                vec![e(1, true, -1.0), e(0, true, 1.0), None, e(2, false, 1.0)],
                vec![e(2, true, -1.0), None, e(0, true, 1.0), e(1, false, -1.0)],
                vec![None, e(2, true, -1.0), e(1, true, 1.0), e(0, false, 1.0)],
            ],
        )
    }

    /// Looks a code up by name: `1x1`/`siso`, `2x2`/`alamouti`, `4x4-1/2`, `4x4-3/4`.
    pub fn by_name(name: &str) -> Result<Self> {
        match name.trim().to_ascii_lowercase().as_str() {
            "1x1" | "siso" => Ok(Self::siso()),
            "2x2" | "alamouti" => Ok(Self::alamouti()),
            "4x4-1/2" => Ok(Self::ostbc4_half()),
            "4x4-3/4" => Ok(Self::ostbc4_three_quarter()),
            other => Err(HetNetError::Config(format!(
                "unknown code '{other}' (expected 1x1, 2x2, 4x4-1/2 or 4x4-3/4)"
            ))),
        }
    }

    /// A code described only by its activation pattern (no codeword matrix).
    pub fn custom(m_tx: u32, rate: f64, pattern: Vec<Vec<bool>>) -> Result<Self> {
        let l = pattern.len() as u32;
        let s = validate(m_tx, l, rate, &pattern)?;
        Ok(Self {
            name: format!("custom-{m_tx}x{l}"),
            m_tx,
            codeword_len: l,
            rate,
            s_active: s,
            symbols: (l as f64 * rate).round() as usize,
            pattern,
            matrix: None,
        })
    }

    fn from_matrix(name: &str, symbols: usize, matrix: Vec<Vec<Option<CodeEntry>>>) -> Self {
        let l = matrix.len() as u32;
        let m = matrix[0].len() as u32;
        let rate = symbols as f64 / l as f64;
        let pattern: Vec<Vec<bool>> = matrix
            .iter()
            .map(|row| row.iter().map(|x| x.is_some()).collect())
            .collect();
        let s = validate(m, l, rate, &pattern).expect("built-in codes are balanced");
        Self {
            name: name.to_string(),
            m_tx: m,
            codeword_len: l,
            rate,
            s_active: s,
            symbols,
            pattern,
            matrix: Some(matrix),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }
    pub fn m_tx(&self) -> u32 {
        self.m_tx
    }
    pub fn codeword_len(&self) -> u32 {
        self.codeword_len
    }
    pub fn rate(&self) -> f64 {
        self.rate
    }
    pub fn s_active(&self) -> u32 {
        self.s_active
    }
    /// Number of information symbols per codeword.
    pub fn symbols(&self) -> usize {
        self.symbols
    }
    /// `pattern[slot][antenna]` is true when the antenna transmits in that slot.
    pub fn activation_pattern(&self) -> &[Vec<bool>] {
        &self.pattern
    }
    /// Codeword matrix (`[slot][antenna]`), if the code has one.
    pub fn matrix(&self) -> Option<&[Vec<Option<CodeEntry>>]> {
        self.matrix.as_deref()
    }
}

fn validate(m_tx: u32, l: u32, rate: f64, pattern: &[Vec<bool>]) -> Result<u32> {
    if m_tx == 0 || l == 0 {
        return Err(HetNetError::Config("code needs at least one antenna and one slot".into()));
    }
    if !(rate > 0.0 && rate <= 1.0) {
        return Err(HetNetError::Config(format!("code rate {rate} outside (0, 1]")));
    }
    let s = l as f64 * rate;
    if (s - s.round()).abs() > 1e-9 {
        return Err(HetNetError::Config(format!(
            "L·r = {s} is not an integer; the code is not power-balanced"
        )));
    }
    let s = s.round() as u32;
    for (i, slot) in pattern.iter().enumerate() {
        if slot.len() != m_tx as usize {
            return Err(HetNetError::Config(format!("slot {i} has {} entries, expected {m_tx}", slot.len())));
        }
        let active = slot.iter().filter(|&&b| b).count() as u32;
        if active != s {
            return Err(HetNetError::Config(format!(
                "slot {i} activates {active} antennas, expected S = {s}"
            )));
        }
    }
    Ok(s)
}
