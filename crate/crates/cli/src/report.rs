//! Deterministic report rendering: aligned columns for humans, tab-separated
//! rows behind `--tsv`. No timestamps, rows pre-sorted by the caller.

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputMode {
    Human,
    Tsv,
}

pub struct Table {
    headers: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(headers: Vec<S>) -> Table {
        Table {
            headers: headers.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push<S: Into<String>>(&mut self, row: Vec<S>) {
        let row: Vec<String> = row.into_iter().map(Into::into).collect();
        assert_eq!(row.len(), self.headers.len(), "ragged table row");
        self.rows.push(row);
    }

    pub fn render(&self, mode: OutputMode) -> String {
        match mode {
            OutputMode::Tsv => {
                let mut out = String::new();
                out.push_str(&self.headers.join("\t"));
                out.push('\n');
                for row in &self.rows {
                    out.push_str(&row.join("\t"));
                    out.push('\n');
                }
                out
            }
            OutputMode::Human => {
                let mut widths: Vec<usize> =
                    self.headers.iter().map(|h| h.chars().count()).collect();
                for row in &self.rows {
                    for (i, cell) in row.iter().enumerate() {
                        widths[i] = widths[i].max(cell.chars().count());
                    }
                }
                let mut out = String::new();
                let emit = |out: &mut String, cells: &[String]| {
                    let line: Vec<String> = cells
                        .iter()
                        .enumerate()
                        .map(|(i, c)| format!("{:<width$}", c, width = widths[i]))
                        .collect();
                    out.push_str(line.join("  ").trim_end());
                    out.push('\n');
                };
                emit(&mut out, &self.headers);
                for row in &self.rows {
                    emit(&mut out, row);
                }
                out
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tsv_and_human_rendering() {
        let mut t = Table::new(vec!["a", "bb"]);
        t.push(vec!["1", "2"]);
        t.push(vec!["333", "4"]);
        assert_eq!(t.render(OutputMode::Tsv), "a\tbb\n1\t2\n333\t4\n");
        assert_eq!(t.render(OutputMode::Human), "a    bb\n1    2\n333  4\n");
    }
}
