"""
zalg: graded algebras, G-algebras and Zhang twists on finite windows.

Run locally:
    python main.py list
    python main.py fixture not-principal --window -3..3 --out np.fix
    python main.py obstruct np.fix
"""

from src.cli.commands import main

if __name__ == "__main__":
    main()
