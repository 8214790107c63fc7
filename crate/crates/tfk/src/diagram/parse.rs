use super::{Crossing, DiagramError, Result, Sign, TangleDiagram};

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

#[derive(Debug, PartialEq)]
enum Tok<'a> {
    Open,
    Close,
    Comma,
    Word(&'a str),
    End,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn next(&mut self) -> Result<(usize, Tok<'a>)> {
        self.skip_ws();
        let start = self.pos;
        let Some(c) = self.src[start..].chars().next() else {
            return Ok((start, Tok::End));
        };
        let t = match c {
            '{' => Tok::Open,
            '}' => Tok::Close,
            ',' => Tok::Comma,
            c if is_word(c) => {
                let len = self.src[start..]
                    .find(|c: char| !is_word(c))
                    .unwrap_or(self.src.len() - start);
                self.pos += len;
                return Ok((start, Tok::Word(&self.src[start..start + len])));
            }
            c => {
                return Err(DiagramError::Syntax { pos: start, msg: format!("unexpected character {c:?}") })
            }
        };
        self.pos += 1;
        Ok((start, t))
    }

    fn expect(&mut self, want: Tok<'_>, what: &str) -> Result<()> {
        let (pos, t) = self.next()?;
        if t == want {
            Ok(())
        } else {
            Err(DiagramError::Syntax { pos, msg: format!("expected {what}") })
        }
    }
}

fn is_word(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

/// Reads `{` word (`,` word)* `}` and returns the words.
fn group<'a>(lx: &mut Lexer<'a>) -> Result<Vec<(usize, &'a str)>> {
    let mut out = Vec::new();
    loop {
        let (pos, t) = lx.next()?;
        match t {
            Tok::Word(w) => out.push((pos, w)),
            _ => return Err(DiagramError::Syntax { pos, msg: "expected a label".into() }),
        }
        let (pos, t) = lx.next()?;
        match t {
            Tok::Comma => {}
            Tok::Close => return Ok(out),
            _ => return Err(DiagramError::Syntax { pos, msg: "expected ',' or '}'".into() }),
        }
    }
}

pub(super) fn parse_diagram(text: &str) -> Result<TangleDiagram> {
    let mut lx = Lexer { src: text, pos: 0 };
    lx.expect(Tok::Open, "'{'")?;
    lx.expect(Tok::Open, "'{'")?;
    let open: Vec<String> = group(&mut lx)?.into_iter().map(|(_, w)| w.to_string()).collect();
    let mut crossings = Vec::new();
    loop {
        let (pos, t) = lx.next()?;
        match t {
            Tok::Close => break,
            Tok::Comma => {}
            _ => return Err(DiagramError::Syntax { pos, msg: "expected ',' or '}'".into() }),
        }
        lx.expect(Tok::Open, "'{'")?;
        let row = group(&mut lx)?;
        if row.len() != 7 {
            return Err(DiagramError::Arity { index: crossings.len() + 1, found: row.len() });
        }
        let sign = match row[4].1 {
            "L" => Sign::L,
            "R" => Sign::R,
            _ => return Err(DiagramError::Syntax { pos: row[4].0, msg: "expected L or R".into() }),
        };
        crossings.push(Crossing {
            quadrants: [0, 1, 2, 3].map(|i| row[i].1.to_string()),
            sign,
            over: row[5].1.to_string(),
            under: row[6].1.to_string(),
        });
    }
    let (pos, t) = lx.next()?;
    if t != Tok::End {
        return Err(DiagramError::Syntax { pos, msg: "trailing input".into() });
    }
    if crossings.is_empty() {
        return Err(DiagramError::Syntax { pos, msg: "at least one crossing required".into() });
    }
    let d = TangleDiagram { open, crossings };
    if let Some(r) = d.dangling_region() {
        return Err(DiagramError::Dangling(r));
    }
    Ok(d)
}
