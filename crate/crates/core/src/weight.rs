//! Exact minimum distance and weight distribution by exhaustive message
//! enumeration, the ground truth behind every distance claim.
//!
//! The message space is quotiented by nonzero scalars: only messages whose
//! first nonzero symbol is 1 are visited, one per scalar class, which cuts
//! the work by a factor of `q^2 - 1` without changing any weight. The space
//! is split into disjoint partitions by leading-zero count and first free
//! symbol; partial minima merge through a commutative min-reduce keyed on
//! (weight, message), so the result is identical for any thread count.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{enumerate_elements_with_guard, Field, FieldElement};
use crate::onepoint::LinearCode;

/// Default cap on `(q^2)^k`, the number of messages behind the enumeration.
pub const DEFAULT_WEIGHT_GUARD: u64 = 1 << 26;

/// Fields beyond this cardinality would need oversized operation tables.
const TABLE_CARDINALITY_CAP: u64 = 2048;

/// Result of an exact distance computation.
#[derive(Debug, Clone)]
pub struct DistanceResult {
    pub distance: u64,
    /// Scalar-quotient message classes visited: `((q^2)^k - 1)/(q^2 - 1)`.
    pub enumerated: u64,
    /// A message of minimal-weight encoding; its first nonzero symbol is 1.
    pub witness: Vec<FieldElement>,
}

/// Exact minimum distance with the default enumeration guard.
pub fn min_distance_exact(code: &LinearCode) -> Result<DistanceResult> {
    min_distance_exact_with_guard(code, DEFAULT_WEIGHT_GUARD)
}

/// Exact minimum distance; `guard` caps the full message count `(q^2)^k`.
pub fn min_distance_exact_with_guard(code: &LinearCode, guard: u64) -> Result<DistanceResult> {
    let setup = EnumSetup::prepare(code, guard)?;
    let identity = || (u64::MAX, Vec::new(), 0u64);
    let (d, msg, count) = setup
        .tasks
        .par_iter()
        .map(|task| {
            let mut best_w = u64::MAX;
            let mut best_msg: Vec<u32> = Vec::new();
            let mut count = 0u64;
            enumerate_task(&setup.rows, &setup.tables, task, |w, view| {
                count += 1;
                if w < best_w {
                    best_w = w;
                    best_msg = view.to_digits();
                } else if w == best_w {
                    let msg = view.to_digits();
                    if msg < best_msg {
                        best_msg = msg;
                    }
                }
            });
            (best_w, best_msg, count)
        })
        .reduce(identity, |a, b| {
            let count = a.2 + b.2;
            if (a.0, &a.1) <= (b.0, &b.1) {
                (a.0, a.1, count)
            } else {
                (b.0, b.1, count)
            }
        });
    debug_assert_eq!(count as u128, setup.class_count);
    let witness: Vec<FieldElement> = msg
        .iter()
        .map(|&i| FieldElement::from_index(code.field(), i as u64))
        .collect();
    let check = encode_weight(code, &witness)?;
    if check != d {
        return Err(Error::Verification(format!(
            "witness re-encoding weight {} disagrees with enumerated minimum {}",
            check, d
        )));
    }
    Ok(DistanceResult {
        distance: d,
        enumerated: count,
        witness,
    })
}

/// Weight distribution over all `(q^2)^k` codewords, zero word included.
pub fn weight_distribution(code: &LinearCode) -> Result<BTreeMap<u64, u64>> {
    weight_distribution_with_guard(code, DEFAULT_WEIGHT_GUARD)
}

/// Weight distribution with an explicit guard on the message count.
pub fn weight_distribution_with_guard(code: &LinearCode, guard: u64) -> Result<BTreeMap<u64, u64>> {
    let setup = EnumSetup::prepare(code, guard)?;
    let scalars = setup.tables.c as u64 - 1;
    let mut counts = setup
        .tasks
        .par_iter()
        .map(|task| {
            let mut local: BTreeMap<u64, u64> = BTreeMap::new();
            enumerate_task(&setup.rows, &setup.tables, task, |w, _| {
                *local.entry(w).or_insert(0) += 1;
            });
            local
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (w, c) in b {
                *a.entry(w).or_insert(0) += c;
            }
            a
        });
    // Each visited class stands for q^2 - 1 scalar multiples of one word.
    for c in counts.values_mut() {
        *c *= scalars;
    }
    *counts.entry(0).or_insert(0) += 1;
    Ok(counts)
}

/// Hamming weight of encoding `message` against the code's rows.
fn encode_weight(code: &LinearCode, message: &[FieldElement]) -> Result<u64> {
    if message.len() != code.rows().len() {
        return Err(Error::Range("message length does not match rows".into()));
    }
    let mut word = vec![FieldElement::zero(code.field()); code.n()];
    for (coef, row) in message.iter().zip(code.rows()) {
        if coef.is_zero() {
            continue;
        }
        for (acc, e) in word.iter_mut().zip(row) {
            *acc = &*acc + &(coef * e);
        }
    }
    Ok(word.iter().filter(|e| !e.is_zero()).count() as u64)
}

struct OpTables {
    c: usize,
    add: Vec<u32>,
    mul: Vec<u32>,
}

impl OpTables {
    fn build(field: &Field) -> Result<OpTables> {
        let c64 = field.cardinality();
        if c64 > TABLE_CARDINALITY_CAP {
            return Err(Error::SizeGuard(format!(
                "field cardinality {} exceeds the table cap {} for codeword enumeration",
                c64, TABLE_CARDINALITY_CAP
            )));
        }
        let c = c64 as usize;
        let elems = enumerate_elements_with_guard(field, c64)?;
        let mut add = vec![0u32; c * c];
        let mut mul = vec![0u32; c * c];
        for (i, a) in elems.iter().enumerate() {
            for (j, b) in elems.iter().enumerate() {
                add[i * c + j] = (a + b).index() as u32;
                mul[i * c + j] = (a * b).index() as u32;
            }
        }
        Ok(OpTables { c, add, mul })
    }
}

/// One partition of the quotiented message space: all messages with zeros
/// before `lead`, symbol 1 at `lead`, and (optionally) a fixed next symbol.
struct Task {
    lead: usize,
    fixed: Option<u32>,
}

struct MessageView<'a> {
    k: usize,
    lead: usize,
    fixed: Option<u32>,
    digits: &'a [u32],
}

impl MessageView<'_> {
    fn to_digits(&self) -> Vec<u32> {
        let mut m = vec![0u32; self.k];
        m[self.lead] = 1;
        let mut pos = self.lead + 1;
        if let Some(v) = self.fixed {
            m[pos] = v;
            pos += 1;
        }
        m[pos..pos + self.digits.len()].copy_from_slice(self.digits);
        m
    }
}

struct EnumSetup {
    rows: Vec<Vec<u32>>,
    tables: OpTables,
    tasks: Vec<Task>,
    class_count: u128,
}

impl EnumSetup {
    fn prepare(code: &LinearCode, guard: u64) -> Result<EnumSetup> {
        let k = code.rows().len();
        if k == 0 {
            return Err(Error::ZeroCode);
        }
        if code.n() == 0 {
            return Err(Error::Range("zero-length code".into()));
        }
        if code.k() != k {
            return Err(Error::Range(
                "enumeration requires linearly independent generator rows".into(),
            ));
        }
        let c = code.field().cardinality();
        let mut total: u128 = 1;
        for _ in 0..k {
            total *= c as u128;
            if total > guard as u128 {
                return Err(Error::SizeGuard(format!(
                    "message count {}^{} exceeds enumeration guard {}",
                    c, k, guard
                )));
            }
        }
        let tables = OpTables::build(code.field())?;
        let rows: Vec<Vec<u32>> = code
            .rows()
            .iter()
            .map(|row| row.iter().map(|e| e.index() as u32).collect())
            .collect();
        let mut tasks = Vec::new();
        for lead in 0..k {
            if k - lead - 1 == 0 {
                tasks.push(Task { lead, fixed: None });
            } else {
                for v in 0..c as u32 {
                    tasks.push(Task {
                        lead,
                        fixed: Some(v),
                    });
                }
            }
        }
        Ok(EnumSetup {
            rows,
            tables,
            tasks,
            class_count: (total - 1) / (c as u128 - 1),
        })
    }
}

fn axpy(cw: &mut [u32], v: u32, row: &[u32], t: &OpTables) {
    let c = t.c;
    let vrow = v as usize * c;
    for (acc, &r) in cw.iter_mut().zip(row) {
        let prod = t.mul[vrow + r as usize];
        *acc = t.add[*acc as usize * c + prod as usize];
    }
}

fn enumerate_task(
    rows: &[Vec<u32>],
    tables: &OpTables,
    task: &Task,
    mut visit: impl FnMut(u64, &MessageView),
) {
    let k = rows.len();
    let n = rows[0].len();
    let c = tables.c as u32;
    let free = k - task.lead - 1 - usize::from(task.fixed.is_some());
    let mut digits = vec![0u32; free];
    let mut cw = vec![0u32; n];
    let base = task.lead + 1 + usize::from(task.fixed.is_some());
    loop {
        cw.copy_from_slice(&rows[task.lead]);
        if let Some(v) = task.fixed {
            if v != 0 {
                axpy(&mut cw, v, &rows[task.lead + 1], tables);
            }
        }
        for (i, &v) in digits.iter().enumerate() {
            if v != 0 {
                axpy(&mut cw, v, &rows[base + i], tables);
            }
        }
        let w = cw.iter().filter(|&&e| e != 0).count() as u64;
        visit(
            w,
            &MessageView {
                k,
                lead: task.lead,
                fixed: task.fixed,
                digits: &digits,
            },
        );
        let mut i = 0;
        loop {
            if i == free {
                return;
            }
            digits[i] += 1;
            if digits[i] < c {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}
