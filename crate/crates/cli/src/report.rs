use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub group: String,
    pub p: u32,
    /// `None` for checks that do not depend on `n`.
    pub n: Option<usize>,
    pub d: usize,
    pub name: String,
    /// The statement under test.
    pub statement: String,
    /// Further inputs, such as the complex.
    #[serde(skip_serializing_if = "String::is_empty")]
    pub input: String,
    pub verdict: Verdict,
    /// Witness on success, counterexample or error on failure.
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<f64>,
}

impl Check {
    fn sort_key(&self) -> (&str, u32, Option<usize>, usize, &str, &str) {
        (&self.group, self.p, self.n, self.d, &self.name, &self.input)
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

#[derive(Serialize)]
struct Summary {
    total: usize,
    passed: usize,
    failed: usize,
}

impl VerificationReport {
    /// Canonical order: by group, p, n, d, then check name and input.
    pub fn sort(&mut self) {
        self.checks.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    }

    pub fn failed(&self) -> usize {
        self.checks.iter().filter(|c| c.verdict == Verdict::Fail).count()
    }

    pub fn passed(&self) -> bool {
        self.failed() == 0
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Out<'a> {
            summary: Summary,
            checks: &'a [Check],
        }
        let summary = Summary { total: self.checks.len(), passed: self.checks.len() - self.failed(), failed: self.failed() };
        let mut s = serde_json::to_string_pretty(&Out { summary, checks: &self.checks }).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_tsv(&self, timings: bool) -> String {
        let mut out = String::from("group\tp\tn\td\tcheck\tinput\tverdict\tdetail");
        if timings {
            out.push_str("\twall_ms");
        }
        out.push('\n');
        for c in &self.checks {
            let n = c.n.map_or("-".to_string(), |n| n.to_string());
            let verdict = match c.verdict {
                Verdict::Pass => "pass",
                Verdict::Fail => "fail",
            };
            let fields = [c.group.as_str(), &c.p.to_string(), &n, &c.d.to_string(), &c.name, &c.input, verdict, &c.detail];
            out.push_str(&fields.map(|f| f.replace(['\t', '\n'], " ")).join("\t"));
            if timings {
                out.push_str(&format!("\t{:.3}", c.wall_ms.unwrap_or(0.0)));
            }
            out.push('\n');
        }
        out
    }
}
