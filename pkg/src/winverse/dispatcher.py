import importlib
import sys

from winverse.utils.errors import (
    DecompositionError, DispatchError, IndexConditionError, MatrixFileError, ShapeError,
    SingularBlockError, SolveError, WeightError,
)

# Mapping of commands to the modules implementing them
command_modules = {
    "compute": "winverse.commands.compute",
    "decompose": "winverse.commands.decompose",
    "verify": "winverse.commands.verify",
    "solve": "winverse.commands.solve",
    "sweep": "winverse.commands.sweep",
    "fixtures": "winverse.commands.fixtures",
}

EXIT_OK = 0
EXIT_UNSATISFIED = 1
EXIT_IO = 2
EXIT_DOMAIN = 3
EXIT_USAGE = 4

DOMAIN_ERRORS = (WeightError, IndexConditionError, SingularBlockError, DecompositionError,
                 SolveError, ShapeError)


def exit_code_for(exc):
    """Exit code of an exception raised while running a command."""
    if isinstance(exc, (MatrixFileError, OSError)):
        return EXIT_IO
    if isinstance(exc, DOMAIN_ERRORS):
        return EXIT_DOMAIN
    if isinstance(exc, (DispatchError, ValueError)):
        return EXIT_USAGE
    raise exc


def dispatch(command, argv):
    """
    Run ``command`` with the remaining arguments.

    Returns:
        int: The command's exit code.

    Raises:
        DispatchError: If the command is unknown.
    """
    module_path = command_modules.get(command)
    if module_path is None:
        raise DispatchError(f"Command '{command}' not found.")
    module = importlib.import_module(module_path)
    return module.main(argv)


def print_expected_usage(file=sys.stdout):
    print(f'''
    winverse: W-weighted generalized inverses

    usage: winverse <{'|'.join(command_modules)}> [options]

    Run `winverse <command> --help` for the options of a command.''', file=file)


def run(args):
    """Dispatch ``args`` and turn library errors into exit codes."""
    if not args or args[0] in ('-h', '--help'):
        print_expected_usage()
        return EXIT_OK if args else EXIT_USAGE
    try:
        return dispatch(args[0], args[1:])
    except SystemExit as e:
        # --help
        return e.code if isinstance(e.code, int) else EXIT_OK
    except Exception as e:
        code = exit_code_for(e)
        print(f"Error: {e}", file=sys.stderr)
        if isinstance(e, DispatchError) and args[0] not in command_modules:
            print_expected_usage(sys.stderr)
        return code


def main():
    return run(sys.argv[1:])


if __name__ == '__main__':
    sys.exit(main())
