"""Command-line front end."""
from .app import CorpusCase, RunConfig, main, run, run_corpus
from .parse import parse_poly, print_poly
from .render import render, render_dot, render_json, render_table

__all__ = ["CorpusCase", "RunConfig", "main", "parse_poly", "print_poly", "render",
           "render_dot", "render_json", "render_table", "run", "run_corpus"]
