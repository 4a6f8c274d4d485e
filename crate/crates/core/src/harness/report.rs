//! Claim results, JSON and table emission, exit codes.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Confirmed,
    BracketInconclusive,
    Refuted,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Confirmed => "confirmed",
            Status::BracketInconclusive => "bracket-inconclusive",
            Status::Refuted => "refuted",
        }
    }
}

/// Budgets in effect for one result.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budgets {
    pub slice: usize,
    pub mult_cap: usize,
    pub witness_deg: usize,
    pub pool_norm: u64,
    pub seed: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClaimResult {
    pub claim: String,
    pub instance: String,
    pub status: Status,
    pub witness: Option<String>,
    pub budgets: Budgets,
    pub ms: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Report {
    pub results: Vec<ClaimResult>,
}

impl Report {
    /// Orders by claim id; within a claim the suite order is kept.
    pub fn new(mut results: Vec<ClaimResult>) -> Self {
        results.sort_by(|a, b| a.claim.cmp(&b.claim));
        Report { results }
    }

    pub fn exit_code(&self) -> i32 {
        if self.results.is_empty() {
            return 3;
        }
        match self.results.iter().map(|r| r.status).max() {
            Some(Status::Refuted) => 1,
            Some(Status::BracketInconclusive) => 2,
            _ => 0,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data")
    }

    /// JSON with every `ms` zeroed, for comparing runs.
    pub fn to_json_untimed(&self) -> String {
        let mut r = self.clone();
        for x in &mut r.results {
            x.ms = 0;
        }
        r.to_json()
    }

    pub fn to_table(&self) -> String {
        let mut rows: Vec<[String; 4]> = vec![["claim".into(), "status".into(), "ms".into(), "instance".into()]];
        for r in &self.results {
            let mut inst = r.instance.clone();
            if let Some(w) = &r.witness {
                write!(inst, "  [witness: {w}]").unwrap();
            }
            rows.push([r.claim.clone(), r.status.as_str().into(), r.ms.to_string(), inst]);
        }
        let w0 = rows.iter().map(|r| r[0].chars().count()).max().unwrap_or(0);
        let w1 = rows.iter().map(|r| r[1].chars().count()).max().unwrap_or(0);
        let w2 = rows.iter().map(|r| r[2].chars().count()).max().unwrap_or(0);
        let mut out = String::new();
        for r in rows {
            writeln!(out, "{:w0$}  {:w1$}  {:>w2$}  {}", r[0], r[1], r[2], r[3]).unwrap();
        }
        let (c, i, f) = self.results.iter().fold((0, 0, 0), |(c, i, f), r| match r.status {
            Status::Confirmed => (c + 1, i, f),
            Status::BracketInconclusive => (c, i + 1, f),
            Status::Refuted => (c, i, f + 1),
        });
        writeln!(out, "{c} confirmed, {i} bracket-inconclusive, {f} refuted").unwrap();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn res(claim: &str, status: Status) -> ClaimResult {
        ClaimResult {
            claim: claim.into(),
            instance: "x".into(),
            status,
            witness: (status == Status::Refuted).then(|| "w".into()),
            budgets: Budgets { slice: 5, mult_cap: 3, witness_deg: 4, pool_norm: 30, seed: 7 },
            ms: 12,
        }
    }

    #[test]
    fn exit_codes_and_order() {
        assert_eq!(Report::new(vec![]).exit_code(), 3);
        assert_eq!(Report::new(vec![]).to_json().replace(char::is_whitespace, ""), r#"{"results":[]}"#);
        let r = Report::new(vec![res("b", Status::Confirmed), res("a", Status::BracketInconclusive)]);
        assert_eq!(r.results[0].claim, "a");
        assert_eq!(r.exit_code(), 2);
        let r = Report::new(vec![res("b", Status::Refuted), res("a", Status::BracketInconclusive)]);
        assert_eq!(r.exit_code(), 1);
        assert!(r.to_json().contains("\"witness\": \"w\""));
        assert!(r.to_json().contains("\"status\": \"bracket-inconclusive\""));
    }
}
