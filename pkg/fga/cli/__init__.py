from fga.cli.cli import main as main
