//! Tableau drawings in English notation.

use std::fmt::Write;

use tauweb::tableaux::StandardTableau;

const BOX: usize = 30;

pub fn tableau_svg(t: &StandardTableau) -> String {
    let rows = t.rows();
    let width = rows.first().map_or(0, Vec::len) * BOX + 2;
    let height = rows.len() * BOX + 2;
    let mut s = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">\n"
    );
    for (r, row) in rows.iter().enumerate() {
        for (c, v) in row.iter().enumerate() {
            let (x, y) = (c * BOX + 1, r * BOX + 1);
            let _ = writeln!(s, "<rect x=\"{x}\" y=\"{y}\" width=\"{BOX}\" height=\"{BOX}\" fill=\"white\" stroke=\"black\"/>");
            let _ = writeln!(
                s,
                "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\" font-size=\"14\">{v}</text>",
                x + BOX / 2,
                y + BOX / 2 + 5
            );
        }
    }
    s.push_str("</svg>\n");
    s
}

pub fn tableau_dot(t: &StandardTableau) -> String {
    let rows: Vec<String> = t
        .rows()
        .iter()
        .map(|r| format!("{{{}}}", r.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("|")))
        .collect();
    format!("digraph tableau {{\n  t [shape=record, label=\"{{{}}}\"];\n}}\n", rows.join("|"))
}
