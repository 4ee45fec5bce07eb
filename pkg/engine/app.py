import atexit
import json
from typing import Optional

import typer
from dotenv import load_dotenv

from core.config_loader import load_config
from core.langfuse_integration import flush
from core.types import CommandResult
from orchestrator import cmd_apply, cmd_classify, cmd_make, cmd_orbit, cmd_verify

# Load environment variables from .env file
load_dotenv()

app = typer.Typer(
    help="Exact engine for the dual logarithmic derivative A[f] = x f'/f.",
    add_completion=False,
    no_args_is_help=True,
)
make_app = typer.Typer(help="Construct members of the closed-form families.", no_args_is_help=True)
app.add_typer(make_app, name="make")

JSON_OPTION = typer.Option(False, "--json", help="Emit machine-readable JSON.")


def emit(result: CommandResult, json_output: bool) -> None:
    """Print a command result and exit with its code."""
    if json_output:
        indent = load_config()["output"].get("json_indent")
        typer.echo(json.dumps(result["payload"], indent=indent, ensure_ascii=False))
    else:
        for line in result["lines"]:
            typer.echo(line)
        if result["message"]:
            typer.echo(result["message"], err=True)
    raise typer.Exit(code=result["exit_code"])


@app.command()
def apply(expression: str = typer.Argument(..., help="Expression in x and ln(x)."),
          json_output: bool = JSON_OPTION):
    """Apply A once and print the display-normalized result."""
    emit(cmd_apply(expression), json_output)


@app.command()
def orbit(expression: str = typer.Argument(...),
          max_steps: Optional[int] = typer.Option(None, "--max-steps", help="Step cap (default from config)."),
          json_output: bool = JSON_OPTION):
    """Iterate A and report pre-period and period."""
    emit(cmd_orbit(expression, max_steps), json_output)


@app.command()
def classify(expression: str = typer.Argument(...), json_output: bool = JSON_OPTION):
    """Decide membership in the fixed-point or period-2 family."""
    emit(cmd_classify(expression), json_output)


@make_app.command("period2")
def make_period2(a: str = typer.Option(..., "--a", help="Gaussian-rational constant a != 0."),
                 c: str = typer.Option(..., "--c", help="Rational exponent c != 0."),
                 json_output: bool = JSON_OPTION):
    """f1 = c a x^c/(1 - a x^c), f2 = c/(1 - a x^c)."""
    emit(cmd_make("period2", a=a, c=c), json_output)


@make_app.command("fixed")
def make_fixed(a: str = typer.Option(..., "--a", help="Gaussian-rational constant a."),
               json_output: bool = JSON_OPTION):
    """f = 1/(a - ln(x))."""
    emit(cmd_make("fixed", a=a), json_output)


@make_app.command("logistic")
def make_logistic(k: Optional[str] = typer.Option(None, "--k", help="Rational rate k != 0 (default 1)."),
                  json_output: bool = JSON_OPTION):
    """The logistic curve in log coordinates, x^k/(1 + x^k)."""
    emit(cmd_make("logistic", k=k), json_output)


@app.command()
def verify(expression: str = typer.Argument(...),
           samples: Optional[int] = typer.Option(None, "--samples"),
           seed: Optional[int] = typer.Option(None, "--seed"),
           tol: Optional[float] = typer.Option(None, "--tol"),
           lo: Optional[float] = typer.Option(None, "--lo"),
           hi: Optional[float] = typer.Option(None, "--hi"),
           pole_guard: Optional[float] = typer.Option(None, "--pole-guard"),
           h_rel: Optional[float] = typer.Option(None, "--h-rel"),
           json_output: bool = JSON_OPTION):
    """Cross-validate symbolic A[f] against finite differences."""
    emit(cmd_verify(expression, samples, seed, tol, lo, hi, pole_guard, h_rel), json_output)


# Flush pending traces synchronously on exit
atexit.register(flush)

if __name__ == "__main__":
    app()
