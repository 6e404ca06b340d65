use std::collections::BTreeSet;

use shpoisson::exactlin::Q;

use super::lexer::Token;
use super::{Block, BlockKind, DslError, Entry, Expr, Key, Manifest, Span, Value};

type PResult<T> = Result<T, DslError>;

/// Recursive descent over the token stream. Failed `peek_is` probes
/// accumulate into the expected set reported at the next error.
pub struct Parser {
    tokens: Vec<(Token, Span)>,
    pos: usize,
    expected: BTreeSet<&'static str>,
}

fn same_kind(a: &Token, b: &Token) -> bool {
    std::mem::discriminant(a) == std::mem::discriminant(b)
}

impl Parser {
    pub fn new(tokens: Vec<(Token, Span)>) -> Self {
        Self { tokens, pos: 0, expected: BTreeSet::new() }
    }

    fn peek(&self) -> &Token {
        &self.tokens[self.pos].0
    }

    fn span(&self) -> Span {
        self.tokens[self.pos].1
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].0.clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        self.expected.clear();
        t
    }

    fn peek_is(&mut self, tok: &Token, label: &'static str) -> bool {
        if same_kind(self.peek(), tok) {
            true
        } else {
            self.expected.insert(label);
            false
        }
    }

    fn eat(&mut self, tok: Token) -> bool {
        let label = tok.symbol();
        if self.peek_is(&tok, label) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn error(&self) -> DslError {
        DslError::parse(self.span(), self.expected.iter().copied(), self.peek().to_string())
    }

    fn expect(&mut self, tok: Token) -> PResult<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.error())
        }
    }

    fn name(&mut self) -> PResult<String> {
        if self.peek_is(&Token::Ident(String::new()), "name") {
            match self.bump() {
                Token::Ident(s) => Ok(s),
                _ => unreachable!("peeked an identifier"),
            }
        } else {
            Err(self.error())
        }
    }

    fn integer(&mut self) -> PResult<u32> {
        let span = self.span();
        if self.peek_is(&Token::Number(String::new()), "integer") {
            let Token::Number(text) = self.peek().clone() else { unreachable!("peeked a number") };
            match text.parse::<u32>() {
                Ok(v) => {
                    self.bump();
                    Ok(v)
                }
                Err(_) => Err(DslError::parse(span, ["integer"], format!("number `{text}`"))),
            }
        } else {
            Err(self.error())
        }
    }

    pub fn manifest(&mut self) -> PResult<Manifest> {
        let mut blocks = Vec::new();
        loop {
            if self.peek_is(&Token::Eof, "end of input") {
                return Ok(Manifest { blocks });
            }
            blocks.push(self.block()?);
        }
    }

    fn block(&mut self) -> PResult<Block> {
        let span = self.span();
        if !self.peek_is(&Token::Ident(String::new()), "block kind") {
            return Err(self.error());
        }
        let kind = match self.peek() {
            Token::Ident(s) => BlockKind::from_keyword(s),
            _ => None,
        };
        let Some(kind) = kind else {
            let kinds = BlockKind::ALL.map(BlockKind::keyword);
            return Err(DslError::parse(span, kinds, self.peek().to_string()));
        };
        self.bump();
        let name = self.name()?;
        self.expect(Token::LBrace)?;
        let mut entries = Vec::new();
        while !self.eat(Token::RBrace) {
            if !self.peek_is(&Token::Ident(String::new()), "key") {
                return Err(self.error());
            }
            entries.push(self.entry()?);
        }
        Ok(Block { kind, name, entries, span })
    }

    fn entry(&mut self) -> PResult<Entry> {
        let span = self.span();
        let name = self.name()?;
        let argument = if self.eat(Token::LParen) {
            let arg = self.name()?;
            self.expect(Token::RParen)?;
            Some(arg)
        } else {
            None
        };
        let mut indices = Vec::new();
        while self.eat(Token::LBracket) {
            indices.push(self.integer()?);
            self.expect(Token::RBracket)?;
        }
        self.expect(Token::Equals)?;
        let value = self.value()?;
        self.expect(Token::Semicolon)?;
        Ok(Entry { key: Key { name, argument, indices }, value, span })
    }

    fn value(&mut self) -> PResult<Value> {
        if self.eat(Token::LBracket) {
            let mut items = Vec::new();
            if self.eat(Token::RBracket) {
                return Ok(Value::List(items));
            }
            loop {
                items.push(self.value()?);
                if self.eat(Token::Comma) {
                    if self.eat(Token::RBracket) {
                        break;
                    }
                    continue;
                }
                self.expect(Token::RBracket)?;
                break;
            }
            Ok(Value::List(items))
        } else {
            Ok(Value::Expr(self.expr()?))
        }
    }

    fn expr(&mut self) -> PResult<Expr> {
        let mut terms = vec![self.term()?];
        loop {
            if self.eat(Token::Plus) {
                terms.push(self.term()?);
            } else if self.eat(Token::Minus) {
                terms.push(self.term()?.negate());
            } else {
                break;
            }
        }
        Ok(if terms.len() == 1 { terms.pop().expect("one term") } else { Expr::Sum(terms) })
    }

    fn term(&mut self) -> PResult<Expr> {
        let mut factors = vec![self.factor()?];
        while self.eat(Token::Star) {
            factors.push(self.factor()?);
        }
        Ok(if factors.len() == 1 { factors.pop().expect("one factor") } else { Expr::Product(factors) })
    }

    fn factor(&mut self) -> PResult<Expr> {
        if self.eat(Token::Minus) {
            return Ok(self.factor()?.negate());
        }
        let base = self.primary()?;
        if self.eat(Token::Caret) {
            let k = self.integer()?;
            return Ok(Expr::Power(Box::new(base), k));
        }
        Ok(base)
    }

    fn primary(&mut self) -> PResult<Expr> {
        let span = self.span();
        if self.peek_is(&Token::Number(String::new()), "number") {
            let Token::Number(text) = self.bump() else { unreachable!("peeked a number") };
            return text
                .parse::<Q>()
                .map(Expr::Number)
                .map_err(|_| DslError::parse(span, ["nonzero denominator"], format!("number `{text}`")));
        }
        if self.peek_is(&Token::Ident(String::new()), "name") {
            return Ok(Expr::Name(self.name()?));
        }
        if self.eat(Token::LParen) {
            let e = self.expr()?;
            self.expect(Token::RParen)?;
            return Ok(e);
        }
        Err(self.error())
    }
}

#[cfg(test)]
mod tests {
    use super::super::lexer::tokenize;
    use super::*;
    use shpoisson::exactlin::{q, qr};

    fn expr(src: &str) -> Expr {
        let toks = tokenize(src).unwrap();
        let mut p = Parser::new(toks);
        p.expr().unwrap()
    }

    #[test]
    fn precedence() {
        let x = || Expr::name("x");
        assert_eq!(
            expr("1 + 2*x^3"),
            Expr::Sum(vec![Expr::Number(q(1)), Expr::Product(vec![Expr::Number(q(2)), Expr::Power(Box::new(x()), 3)])])
        );
        assert_eq!(expr("-1/2*x"), Expr::Product(vec![Expr::Number(qr(-1, 2)), x()]));
        assert_eq!(expr("x - y"), Expr::Sum(vec![x(), Expr::Neg(Box::new(Expr::name("y")))]));
    }

    #[test]
    fn zero_denominator_is_a_parse_error() {
        let toks = tokenize("1/0").unwrap();
        assert!(matches!(Parser::new(toks).expr(), Err(DslError::Parse { .. })));
    }
}
