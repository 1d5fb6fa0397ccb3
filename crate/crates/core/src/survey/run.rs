//! Parallel survey driver with resumable JSON-lines output.

use std::collections::HashMap;
use std::fs::{self, File, OpenOptions};
use std::io::{BufWriter, Write};
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{classify_one, is_orbit_representative, SurveyOptions, SurveyRecord};
use crate::abelian::{AbelianGroup, GroupElement};
use crate::error::{Error, Result};
use crate::stability::Status;
use crate::wilson::c2_holds_with;

pub const SURVEY_FORMAT_VERSION: &str = "circstab-survey/1";

const CHUNK: usize = 128;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SurveyHeader {
    pub version: String,
    pub source: String,
    pub options: SurveyOptions,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ConditionCounts {
    pub c1: usize,
    pub c1_vacuous: usize,
    pub c2: usize,
    pub c2_vacuous: usize,
    pub c2prime: usize,
    pub c3: usize,
    pub c4: usize,
    pub any: usize,
    pub any_corrected: usize,
}

/// Stable records satisfying each sufficient condition.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ViolationCounts {
    pub c1: usize,
    pub c2prime: usize,
    pub c3: usize,
    pub c4: usize,
}

/// Counts under the C.2-with-fixed-`b` filter.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct C2Tally {
    pub b: u64,
    pub satisfying: usize,
    pub unstable: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SurveyAggregate {
    pub total: usize,
    pub stable: usize,
    pub trivially_unstable: usize,
    pub nontrivially_unstable: usize,
    pub unstable: usize,
    pub with_errors: usize,
    pub arc_transitive: usize,
    pub compat_inconclusive: usize,
    pub conditions: ConditionCounts,
    pub c2_tally: Option<C2Tally>,
    pub nontrivially_unstable_records: Vec<String>,
    /// C.1, C.2′, C.3 or C.4 holds yet the graph is stable.
    pub wilson_violations: Vec<String>,
    pub wilson_violations_by_condition: ViolationCounts,
    /// Raw C.2 holds yet the graph is stable.
    pub raw_c2_unsound: Vec<String>,
    /// Nontrivially unstable circulants meeting none of C.1–C.4.
    pub unexplained_unstable: Vec<String>,
    /// Nontrivially unstable with a conclusive "not compatible".
    pub incompatible_nontrivially_unstable: Vec<String>,
    pub arc_transitive_nontrivially_unstable: Vec<String>,
}

impl SurveyAggregate {
    fn absorb(&mut self, r: &SurveyRecord) {
        self.total += 1;
        match r.status {
            Some(Status::Stable) => self.stable += 1,
            Some(Status::TriviallyUnstable) => self.trivially_unstable += 1,
            Some(Status::NontriviallyUnstable) => self.nontrivially_unstable += 1,
            None => {}
        }
        if r.is_unstable() {
            self.unstable += 1;
        }
        if !r.errors.is_empty() {
            self.with_errors += 1;
        }
        if r.arc_transitive == Some(true) {
            self.arc_transitive += 1;
        }
        if r.compat_inconclusive {
            self.compat_inconclusive += 1;
        }
        let nontrivial = r.status == Some(Status::NontriviallyUnstable);
        let stable = r.status == Some(Status::Stable);
        let key = r.key();
        if nontrivial {
            self.nontrivially_unstable_records.push(key.clone());
            if r.compatible == Some(false) {
                self.incompatible_nontrivially_unstable.push(key.clone());
            }
            if r.arc_transitive == Some(true) {
                self.arc_transitive_nontrivially_unstable.push(key.clone());
            }
        }
        if let Some(c) = &r.conditions {
            let k = &mut self.conditions;
            k.c1 += c.c1 as usize;
            k.c1_vacuous += c.c1_vacuous as usize;
            k.c2 += c.c2 as usize;
            k.c2_vacuous += c.c2_vacuous as usize;
            k.c2prime += c.c2prime as usize;
            k.c3 += c.c3 as usize;
            k.c4 += c.c4 as usize;
            k.any += c.any as usize;
            k.any_corrected += c.any_corrected as usize;
            if stable && c.any_corrected {
                self.wilson_violations.push(key.clone());
                let v = &mut self.wilson_violations_by_condition;
                v.c1 += c.c1 as usize;
                v.c2prime += c.c2prime as usize;
                v.c3 += c.c3 as usize;
                v.c4 += c.c4 as usize;
            }
            if stable && c.c2 {
                self.raw_c2_unsound.push(key.clone());
            }
            if nontrivial && !c.any {
                self.unexplained_unstable.push(key);
            }
        }
    }

    pub fn from_records<'a>(records: impl IntoIterator<Item = &'a SurveyRecord>, c2_b: Option<u64>) -> Self {
        let mut agg = SurveyAggregate::default();
        for r in records {
            agg.absorb(r);
        }
        agg.c2_tally = c2_b.map(|b| C2Tally {
            b,
            satisfying: agg.total,
            unstable: agg.unstable,
        });
        agg
    }
}

type Job = (AbelianGroup, Vec<GroupElement>);

fn keep(job: &Job, opts: &SurveyOptions) -> Result<bool> {
    let (group, set) = job;
    if let Some(b) = opts.c2_b {
        let Some(n) = group.cyclic_order() else {
            return Ok(false);
        };
        let s: Vec<u64> = set.iter().map(|e| e.0[0]).collect();
        if !c2_holds_with(n, &s, b) {
            return Ok(false);
        }
    }
    if opts.dedupe_ci && !is_orbit_representative(group, set)? {
        return Ok(false);
    }
    Ok(true)
}

/// Header and records of an existing survey file, plus the byte length of
/// its well-formed prefix.
pub fn read_records(path: &Path) -> Result<(SurveyHeader, Vec<SurveyRecord>, u64)> {
    let text = fs::read_to_string(path)?;
    let mut offset = 0u64;
    let mut header = None;
    let mut records = Vec::new();
    for line in text.split_inclusive('\n') {
        if !line.ends_with('\n') {
            break;
        }
        if header.is_none() {
            let h: SurveyHeader = serde_json::from_str(line.trim_end())
                .map_err(|e| Error::Parse(format!("survey header: {e}")))?;
            header = Some(h);
        } else {
            match serde_json::from_str::<SurveyRecord>(line.trim_end()) {
                Ok(r) => records.push(r),
                Err(_) => break,
            }
        }
        offset += line.len() as u64;
    }
    let header = header.ok_or_else(|| Error::Parse(format!("{} has no survey header", path.display())))?;
    Ok((header, records, offset))
}

/// Classify every job passing the filters, in enumeration order.
///
/// With `out`, records are appended to a JSON-lines file after a header line;
/// an existing file with the same header is resumed, reusing its records.
pub fn run_survey(
    jobs: Vec<Job>,
    source: &str,
    opts: &SurveyOptions,
    out: Option<&Path>,
) -> Result<(SurveyAggregate, Vec<SurveyRecord>)> {
    let mut kept = Vec::with_capacity(jobs.len());
    for job in jobs {
        if keep(&job, opts)? {
            kept.push(job);
        }
    }
    let header = SurveyHeader {
        version: SURVEY_FORMAT_VERSION.to_string(),
        source: source.to_string(),
        options: SurveyOptions {
            workers: None,
            ..opts.clone()
        },
    };

    let mut done: HashMap<String, SurveyRecord> = HashMap::new();
    let mut writer = match out {
        None => None,
        Some(path) if path.exists() && fs::metadata(path)?.len() > 0 => {
            let (existing, records, offset) = read_records(path)?;
            if existing != header {
                return Err(Error::InvalidParameter(format!(
                    "{} was written with different survey parameters",
                    path.display()
                )));
            }
            for r in records {
                done.insert(r.key(), r);
            }
            let file = OpenOptions::new().write(true).open(path)?;
            file.set_len(offset)?;
            drop(file);
            Some(BufWriter::new(OpenOptions::new().append(true).open(path)?))
        }
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            writeln!(w, "{}", serde_json::to_string(&header).expect("header serialises"))?;
            w.flush()?;
            Some(w)
        }
    };

    let pool = {
        let mut b = rayon::ThreadPoolBuilder::new();
        if let Some(k) = opts.workers {
            b = b.num_threads(k);
        }
        b.build().map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?
    };

    let mut records = Vec::with_capacity(kept.len());
    for chunk in kept.chunks(CHUNK) {
        let fresh: Vec<Option<SurveyRecord>> = pool.install(|| {
            chunk
                .par_iter()
                .map(|(g, s)| {
                    let key = format!("{}|{}", g.descriptor(), super::SetRepr::new(g, s).to_text());
                    (!done.contains_key(&key)).then(|| classify_one(g, s, opts))
                })
                .collect()
        });
        for ((g, s), rec) in chunk.iter().zip(fresh) {
            match rec {
                Some(r) => {
                    if let Some(w) = writer.as_mut() {
                        writeln!(w, "{}", serde_json::to_string(&r).expect("record serialises"))?;
                    }
                    records.push(r);
                }
                None => {
                    let key = format!("{}|{}", g.descriptor(), super::SetRepr::new(g, s).to_text());
                    records.push(done[&key].clone());
                }
            }
        }
        if let Some(w) = writer.as_mut() {
            w.flush()?;
        }
    }
    let agg = SurveyAggregate::from_records(&records, opts.c2_b);
    Ok((agg, records))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::survey::{enumerate_connection_sets, CompatMode};

    fn circulant_jobs(n: u64) -> Vec<Job> {
        let g = AbelianGroup::cyclic(n as i64).unwrap();
        enumerate_connection_sets(n)
            .into_iter()
            .map(|s| (g.clone(), s.into_iter().map(|x| GroupElement(vec![x])).collect()))
            .collect()
    }

    #[test]
    fn c2_b3_counts_for_twelve() {
        let opts = SurveyOptions {
            c2_b: Some(3),
            compat: CompatMode::Never,
            ..SurveyOptions::default()
        };
        let (agg, _) = run_survey(circulant_jobs(12), "n=12", &opts, None).unwrap();
        let tally = agg.c2_tally.unwrap();
        assert_eq!((tally.satisfying, tally.unstable), (31, 22));
    }

    #[test]
    fn resume_reuses_records() {
        let dir = std::env::temp_dir().join(format!("circstab-resume-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        let path = dir.join("out.jsonl");
        let _ = fs::remove_file(&path);
        let opts = SurveyOptions {
            compat: CompatMode::Never,
            ..SurveyOptions::default()
        };
        let (full, _) = run_survey(circulant_jobs(9), "n=9", &opts, Some(&path)).unwrap();
        let text = fs::read_to_string(&path).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 1 + 15);
        // keep the header and five records plus a torn line
        let partial = format!("{}\n{}", lines[..6].join("\n"), &lines[6][..10]);
        fs::write(&path, partial).unwrap();
        let (resumed, recs) = run_survey(circulant_jobs(9), "n=9", &opts, Some(&path)).unwrap();
        assert_eq!(resumed, full);
        assert_eq!(recs.len(), 15);
        let (_, again, _) = read_records(&path).unwrap();
        assert_eq!(again.len(), 15);
        assert!(run_survey(circulant_jobs(9), "other", &opts, Some(&path)).is_err());
        fs::remove_dir_all(&dir).unwrap();
    }
}
