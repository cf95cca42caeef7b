use std::io::Write;

use runsubseq::bounds::{check_witness, BoundsEvaluator};
use runsubseq::{exact, Count, RunString};

use crate::CliError;

pub const HEADER: [&str; 9] =
    ["t", "lev_lower", "hr_lower", "new_lower", "exact", "new_upper", "hr_upper", "lev_upper", "naive_upper"];

/// One CSV row: every bound at a single `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepRow {
    pub t: usize,
    pub lev_lower: Count,
    pub hr_lower: Count,
    pub new_lower: Count,
    pub exact: Option<Count>,
    pub new_upper: Count,
    pub hr_upper: Count,
    pub lev_upper: Count,
    pub naive_upper: Count,
}

impl SweepRow {
    pub fn fields(&self) -> [String; 9] {
        [
            self.t.to_string(),
            self.lev_lower.to_string(),
            self.hr_lower.to_string(),
            self.new_lower.to_string(),
            self.exact.as_ref().map(Count::to_string).unwrap_or_default(),
            self.new_upper.to_string(),
            self.hr_upper.to_string(),
            self.lev_upper.to_string(),
            self.naive_upper.to_string(),
        ]
    }
}

/// Rows for `t = 0..=n`. `k` overrides the balanced run length; `witness`
/// fills the exact column.
pub fn sweep(n: usize, r: usize, k: Option<usize>, witness: Option<&RunString>) -> Result<Vec<SweepRow>, CliError> {
    let mut eval = match k {
        Some(k) => BoundsEvaluator::<Count>::with_k(n, r, k)?,
        None => BoundsEvaluator::new(n, r)?,
    };
    let exact: Option<Vec<Count>> = match witness {
        Some(w) => {
            check_witness(n, r, w)?;
            Some(exact::count_all_t(w))
        }
        None => None,
    };
    (0..=n)
        .map(|t| {
            let rep = eval.report(t, exact.as_ref().map(|e| e[t].clone()))?;
            Ok(SweepRow {
                t,
                lev_lower: rep.lev_lower,
                hr_lower: rep.hr_lower,
                new_lower: rep.new_lower,
                exact: rep.exact,
                new_upper: rep.new_upper,
                hr_upper: rep.hr_upper,
                lev_upper: rep.lev_upper,
                naive_upper: rep.naive_upper,
            })
        })
        .collect()
}

/// Writes the header and rows as comma-separated values with LF line endings.
pub fn write_csv<W: Write>(out: W, rows: &[SweepRow]) -> Result<(), CliError> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    w.write_record(HEADER)?;
    for row in rows {
        w.write_record(row.fields())?;
    }
    w.flush()?;
    Ok(())
}
