from ontolint.cli import run

run()
