"""Command-line front end"""
from .commands import CommandHandler, CommandResult, choose_tree, parse_tree_spec
from .report import build_report, render_csv, render_json, render_table
