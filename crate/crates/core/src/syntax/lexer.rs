use super::{ParseError, ParseErrorKind, Pos};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Num(u64),
    Def,
    Rec,
    Type,
    All,
    Match,
    Backslash,
    Dot,
    LParen,
    RParen,
    Comma,
    LBracket,
    RBracket,
    LBrace,
    RBrace,
    Colon,
    Equals,
    FatArrow,
    Star,
    Percent,
    /// `->>`
    Over,
    /// `->`
    Arrow,
    /// `-o`
    Lolli,
    Plus,
    At,
    Hash,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Num(n) => format!("number `{n}`"),
            Tok::Eof => "end of input".to_string(),
            other => format!("`{}`", other.symbol()),
        }
    }

    fn symbol(&self) -> &'static str {
        match self {
            Tok::Def => "def",
            Tok::Rec => "rec",
            Tok::Type => "type",
            Tok::All => "all",
            Tok::Match => "match",
            Tok::Backslash => "\\",
            Tok::Dot => ".",
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::Comma => ",",
            Tok::LBracket => "[",
            Tok::RBracket => "]",
            Tok::LBrace => "{",
            Tok::RBrace => "}",
            Tok::Colon => ":",
            Tok::Equals => "=",
            Tok::FatArrow => "=>",
            Tok::Star => "*",
            Tok::Percent => "%",
            Tok::Over => "->>",
            Tok::Arrow => "->",
            Tok::Lolli => "-o",
            Tok::Plus => "+",
            Tok::At => "@",
            Tok::Hash => "#",
            Tok::Ident(_) | Tok::Num(_) | Tok::Eof => "",
        }
    }
}

pub fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

pub fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

pub fn tokenize(src: &str) -> Result<Vec<(Tok, Pos)>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, col };
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        let peek = chars.get(i + 1).copied();
        if c == '-' && peek == Some('-') {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let (tok, len) = if is_ident_start(c) {
            let start = i;
            let mut j = i;
            while j < chars.len() && is_ident_char(chars[j]) {
                j += 1;
            }
            let word: String = chars[start..j].iter().collect();
            let tok = match word.as_str() {
                "def" => Tok::Def,
                "rec" => Tok::Rec,
                "type" => Tok::Type,
                "all" => Tok::All,
                "match" => Tok::Match,
                _ => Tok::Ident(word),
            };
            (tok, j - start)
        } else if c.is_ascii_digit() {
            let start = i;
            let mut j = i;
            while j < chars.len() && chars[j].is_ascii_digit() {
                j += 1;
            }
            let digits: String = chars[start..j].iter().collect();
            let n = digits.parse::<u64>().map_err(|_| {
                ParseError::new(
                    ParseErrorKind::Syntax(format!("number `{digits}` out of range")),
                    pos,
                )
            })?;
            (Tok::Num(n), j - start)
        } else {
            match (c, peek) {
                ('-', Some('>')) if chars.get(i + 2) == Some(&'>') => (Tok::Over, 3),
                ('-', Some('>')) => (Tok::Arrow, 2),
                ('-', Some('o')) if !chars.get(i + 2).is_some_and(|&c| is_ident_char(c)) => {
                    (Tok::Lolli, 2)
                }
                ('=', Some('>')) => (Tok::FatArrow, 2),
                ('\\', _) => (Tok::Backslash, 1),
                ('.', _) => (Tok::Dot, 1),
                ('(', _) => (Tok::LParen, 1),
                (')', _) => (Tok::RParen, 1),
                (',', _) => (Tok::Comma, 1),
                ('[', _) => (Tok::LBracket, 1),
                (']', _) => (Tok::RBracket, 1),
                ('{', _) => (Tok::LBrace, 1),
                ('}', _) => (Tok::RBrace, 1),
                (':', _) => (Tok::Colon, 1),
                ('=', _) => (Tok::Equals, 1),
                ('*', _) => (Tok::Star, 1),
                ('%', _) => (Tok::Percent, 1),
                ('+', _) => (Tok::Plus, 1),
                ('@', _) => (Tok::At, 1),
                ('#', _) => (Tok::Hash, 1),
                _ => {
                    return Err(ParseError::new(
                        ParseErrorKind::Syntax(format!("unexpected character `{c}`")),
                        pos,
                    ))
                }
            }
        };
        out.push((tok, pos));
        i += len;
        col += len;
    }
    out.push((Tok::Eof, Pos { line, col }));
    Ok(out)
}
