//! Experimental game datasets and their CSV file format.
//!
//! Nine repeated prisoner's-dilemma games are bundled from two published
//! laboratory experiments (labelled `blonski`, six games, and `dalbo`,
//! three games), each with its payoff parameters, the observed percentage
//! of cooperating players `cp`, the within-experiment cooperation rank
//! (1 = most cooperative) and the continuation probability `delta` of the
//! repeated game (0.75 in both experiments).
//!
//! File format: UTF-8 CSV with header
//! `game_id,experiment,a,b,c,d,cp,observed_rank,delta`.

use std::fmt;
use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::payoff::PayoffMatrix;

/// Source of a game record.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Experiment {
    Blonski,
    DalBo,
    Custom,
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Experiment::Blonski => "blonski",
            Experiment::DalBo => "dalbo",
            Experiment::Custom => "custom",
        };
        f.write_str(s)
    }
}

/// One experimental game: payoffs plus observed cooperation data.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GameRecord {
    pub game_id: String,
    pub experiment: Experiment,
    pub payoff: PayoffMatrix,
    /// Observed percentage of cooperating players, in [0, 100].
    pub cp: f64,
    /// Within-experiment cooperation rank, 1 = most cooperative.
    pub observed_rank: u32,
    /// Continuation probability of the repeated game.
    pub delta_continuation: f64,
}

fn record(
    game_id: &str,
    experiment: Experiment,
    payoffs: (f64, f64, f64, f64),
    cp: f64,
    observed_rank: u32,
) -> GameRecord {
    let (a, b, c, d) = payoffs;
    GameRecord {
        game_id: game_id.to_owned(),
        experiment,
        payoff: PayoffMatrix::new(a, b, c, d).expect("bundled payoffs are valid"),
        cp,
        observed_rank,
        delta_continuation: 0.75,
    }
}

/// The six games of the `blonski` experiment.
pub fn blonski_dataset() -> Vec<GameRecord> {
    use Experiment::Blonski;
    vec![
        record("blonski-1", Blonski, (70.0, 100.0, 90.0, 80.0), 21.4, 3),
        record("blonski-2", Blonski, (0.0, 100.0, 90.0, 80.0), 2.8, 6),
        record("blonski-3", Blonski, (30.0, 130.0, 90.0, 70.0), 15.4, 4),
        record("blonski-4", Blonski, (0.0, 100.0, 90.0, 70.0), 13.4, 5),
        record("blonski-5", Blonski, (0.0, 120.0, 90.0, 50.0), 37.0, 2),
        record("blonski-6", Blonski, (0.0, 140.0, 90.0, 30.0), 37.6, 1),
    ]
}

/// The three games of the `dalbo` experiment.
pub fn dalbo_dataset() -> Vec<GameRecord> {
    use Experiment::DalBo;
    vec![
        record("dalbo-1", DalBo, (12.0, 50.0, 32.0, 25.0), 7.6, 3),
        record("dalbo-2", DalBo, (12.0, 50.0, 40.0, 25.0), 22.1, 2),
        record("dalbo-3", DalBo, (12.0, 50.0, 48.0, 25.0), 28.7, 1),
    ]
}

/// All nine bundled games, `blonski` first.
pub fn builtin_datasets() -> Vec<GameRecord> {
    let mut all = blonski_dataset();
    all.extend(dalbo_dataset());
    all
}

/// Checks that, within each experiment, observed ranks are the
/// permutation 1..n ordered by strictly descending cp.
pub fn validate_records(records: &[GameRecord]) -> Result<()> {
    let mut experiments: Vec<Experiment> = Vec::new();
    for r in records {
        if !experiments.contains(&r.experiment) {
            experiments.push(r.experiment);
        }
    }
    for exp in experiments {
        let group: Vec<&GameRecord> = records.iter().filter(|r| r.experiment == exp).collect();
        let n = group.len() as u32;
        let mut seen = vec![false; n as usize];
        for r in &group {
            if r.observed_rank == 0 || r.observed_rank > n {
                return Err(Error::BadObservedRanks {
                    experiment: exp.to_string(),
                });
            }
            let slot = &mut seen[(r.observed_rank - 1) as usize];
            if *slot {
                return Err(Error::BadObservedRanks {
                    experiment: exp.to_string(),
                });
            }
            *slot = true;
        }
        // rank 1 must hold the strictly highest cp, and so on down;
        // a NaN cp counts as unordered
        let mut by_rank = group.clone();
        by_rank.sort_by_key(|r| r.observed_rank);
        for pair in by_rank.windows(2) {
            #[allow(clippy::neg_cmp_op_on_partial_ord)]
            if !(pair[0].cp > pair[1].cp) {
                return Err(Error::BadObservedRanks {
                    experiment: exp.to_string(),
                });
            }
        }
    }
    Ok(())
}

#[derive(Debug, Serialize, Deserialize)]
struct CsvRow {
    game_id: String,
    experiment: String,
    a: f64,
    b: f64,
    c: f64,
    d: f64,
    cp: f64,
    observed_rank: u32,
    delta: f64,
}

/// Parses a dataset; errors carry 1-based line numbers. The parsed
/// records are validated (payoff inequalities, rank permutation).
pub fn read_csv<R: Read>(reader: R) -> Result<Vec<GameRecord>> {
    let mut rdr = csv::ReaderBuilder::new().from_reader(reader);
    let mut records = Vec::new();
    for row in rdr.deserialize::<CsvRow>() {
        let row = row.map_err(|e| {
            let line = e.position().map(|p| p.line()).unwrap_or_default();
            Error::Parse {
                line,
                message: match e.kind() {
                    csv::ErrorKind::Deserialize { err, .. } => err.to_string(),
                    _ => e.to_string(),
                },
            }
        })?;
        let line = records.len() as u64 + 2; // header is line 1
        let experiment = match row.experiment.as_str() {
            "blonski" => Experiment::Blonski,
            "dalbo" => Experiment::DalBo,
            "custom" => Experiment::Custom,
            other => {
                return Err(Error::Parse {
                    line,
                    message: format!(
                        "unknown experiment '{other}' (expected blonski, dalbo or custom)"
                    ),
                })
            }
        };
        let payoff = PayoffMatrix::new(row.a, row.b, row.c, row.d).map_err(|e| Error::Parse {
            line,
            message: e.to_string(),
        })?;
        if !(0.0..=100.0).contains(&row.cp) {
            return Err(Error::Parse {
                line,
                message: format!("cp = {} outside [0, 100]", row.cp),
            });
        }
        records.push(GameRecord {
            game_id: row.game_id,
            experiment,
            payoff,
            cp: row.cp,
            observed_rank: row.observed_rank,
            delta_continuation: row.delta,
        });
    }
    validate_records(&records)?;
    Ok(records)
}

/// Writes records in the dataset CSV format. Numbers use the shortest
/// representation that round-trips, so write-then-read reproduces the
/// records exactly.
pub fn write_csv<W: Write>(writer: W, records: &[GameRecord]) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(writer);
    for r in records {
        let row = CsvRow {
            game_id: r.game_id.clone(),
            experiment: r.experiment.to_string(),
            a: r.payoff.a(),
            b: r.payoff.b(),
            c: r.payoff.c(),
            d: r.payoff.d(),
            cp: r.cp,
            observed_rank: r.observed_rank,
            delta: r.delta_continuation,
        };
        wtr.serialize(row).map_err(|e| Error::Parse {
            line: 0,
            message: e.to_string(),
        })?;
    }
    wtr.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_data_matches_reference_rows() {
        let all = builtin_datasets();
        assert_eq!(all.len(), 9);

        let b6 = &all[5];
        assert_eq!(b6.game_id, "blonski-6");
        assert_eq!(
            (b6.payoff.a(), b6.payoff.b(), b6.payoff.c(), b6.payoff.d()),
            (0.0, 140.0, 90.0, 30.0)
        );
        assert_eq!((b6.cp, b6.observed_rank), (37.6, 1));

        let b2 = &all[1];
        assert_eq!((b2.cp, b2.observed_rank), (2.8, 6));

        let d1 = &all[6];
        assert_eq!(
            (d1.payoff.a(), d1.payoff.b(), d1.payoff.c(), d1.payoff.d()),
            (12.0, 50.0, 32.0, 25.0)
        );
        assert_eq!((d1.cp, d1.observed_rank), (7.6, 3));
        assert_eq!(d1.delta_continuation, 0.75);
    }

    #[test]
    fn bundled_data_passes_validation() {
        validate_records(&builtin_datasets()).unwrap();
    }

    #[test]
    fn csv_round_trip_is_exact() {
        let original = builtin_datasets();
        let mut buf = Vec::new();
        write_csv(&mut buf, &original).unwrap();
        let parsed = read_csv(buf.as_slice()).unwrap();
        assert_eq!(original, parsed);

        // and the second generation of bytes is identical
        let mut buf2 = Vec::new();
        write_csv(&mut buf2, &parsed).unwrap();
        assert_eq!(buf, buf2);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let data = "game_id,experiment,a,b,c,d,cp,observed_rank,delta\n\
                    g1,custom,0,100,90,80,50,1,0.75\n\
                    g2,custom,1,2,3,4,50,2,0.75\n";
        let err = read_csv(data.as_bytes()).unwrap_err();
        match err {
            Error::Parse { line, message } => {
                assert_eq!(line, 3);
                assert!(message.contains("b > c violated"), "{message}");
            }
            other => panic!("expected parse error, got {other}"),
        }
    }

    #[test]
    fn unknown_experiment_is_rejected() {
        let data = "game_id,experiment,a,b,c,d,cp,observed_rank,delta\n\
                    g1,lab9,0,100,90,80,50,1,0.75\n";
        let err = read_csv(data.as_bytes()).unwrap_err();
        assert!(err.to_string().contains("unknown experiment"));
    }

    #[test]
    fn bad_rank_permutations_are_rejected() {
        // duplicate rank
        let mut recs = dalbo_dataset();
        recs[1].observed_rank = 1;
        assert!(validate_records(&recs).is_err());

        // ranks not ordered by descending cp
        let mut recs = dalbo_dataset();
        recs[0].cp = 99.0; // rank 3 now has the highest cp
        assert!(validate_records(&recs).is_err());
    }
}
