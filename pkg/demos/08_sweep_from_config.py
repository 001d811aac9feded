"""Run a config-file sweep from Python, exactly as the command line does.

Equivalent shell command:  irsperf sweep demos/configs/fig5_small.ini --samples 20000
"""

from pathlib import Path

from irsperf.cli import main

config = Path(__file__).with_name("configs") / "fig5_small.ini"
raise SystemExit(main(["sweep", str(config), "--samples", "20000"]))
