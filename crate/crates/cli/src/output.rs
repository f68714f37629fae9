use clap::ValueEnum;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Csv,
    Json,
}

/// A command result that can be rendered in every output format.
pub struct Doc {
    plain: Option<String>,
    headers: Vec<String>,
    rows: Vec<Vec<String>>,
    json: Value,
}

impl Doc {
    pub fn table(headers: Vec<String>, rows: Vec<Vec<String>>, json: Value) -> Self {
        Doc {
            plain: None,
            headers,
            rows,
            json,
        }
    }

    pub fn with_plain(plain: String, headers: Vec<String>, rows: Vec<Vec<String>>, json: Value) -> Self {
        Doc {
            plain: Some(plain),
            headers,
            rows,
            json,
        }
    }

    pub fn single(value: String, headers: Vec<String>, row: Vec<String>, json: Value) -> Self {
        Doc {
            plain: Some(value + "\n"),
            headers,
            rows: vec![row],
            json,
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Plain => self.plain_text(),
            Format::Csv => self.csv(),
            Format::Json => serde_json::to_string_pretty(&self.json).expect("serialisable") + "\n",
        }
    }

    pub fn plain_text(&self) -> String {
        if let Some(p) = &self.plain {
            return p.clone();
        }
        let cols = self.headers.len();
        let width: Vec<usize> = (0..cols)
            .map(|j| {
                self.rows
                    .iter()
                    .map(|r| r[j].chars().count())
                    .chain(std::iter::once(self.headers[j].chars().count()))
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let mut out = String::new();
        for line in std::iter::once(&self.headers).chain(&self.rows) {
            let cells: Vec<String> = line
                .iter()
                .enumerate()
                .map(|(j, c)| format!("{}{}", " ".repeat(width[j] - c.chars().count()), c))
                .collect();
            out.push_str(cells.join("  ").trim_end());
            out.push('\n');
        }
        out
    }

    fn csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.headers).expect("in-memory write");
        for r in &self.rows {
            w.write_record(r).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
    }
}
