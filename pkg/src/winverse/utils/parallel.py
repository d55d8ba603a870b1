import sys
import traceback
from concurrent.futures import FIRST_COMPLETED, ProcessPoolExecutor, ThreadPoolExecutor, TimeoutError, wait

from tqdm import tqdm

POOLS = {'Process': ProcessPoolExecutor, 'Thread': ThreadPoolExecutor}


def _report_failure(arg, exc, verbose):
    print(f"\nExecution failed for args:\n {arg}", file=sys.stderr)
    if verbose:
        print(''.join(traceback.format_exception(type(exc), exc, exc.__traceback__)), file=sys.stderr)
    else:
        print(f"Exception: {exc!r}", file=sys.stderr)


def parallel_executor(func, args, method='Process', max_workers=4, return_value=True, bar=True,
                      timeout=None, verbose_errors=False, desc=None):
    """
    Evaluate ``func`` on every element of ``args`` in a worker pool.

    Failures never abort the batch; they are reported on stderr and their
    indices returned.

    Args:
        func: Function taking one argument; must be picklable for ``'Process'``.
        args: Sequence of arguments.
        method: ``'Process'`` or ``'Thread'``.
        max_workers: Pool size, None for the executor default.
        return_value: Collect the return values.
        bar: Show a tqdm progress bar.
        timeout: Seconds to wait for the next call to finish, None for no limit.
            Calls still pending when it expires count as failed.
        verbose_errors: Print full tracebacks instead of the exception only.
        desc: Label of the progress bar.

    Returns:
        tuple: ``(results, failed_indices)``. ``results`` follows the order of
        ``args`` with None for failed calls (empty if ``return_value`` is
        False); ``failed_indices`` is sorted.
    """
    if method not in POOLS:
        raise ValueError(f"method must be one of {', '.join(POOLS)}, got {method!r}")
    args = list(args)
    results = [None] * len(args) if return_value else []
    failed = set()

    with POOLS[method](max_workers=max_workers) as executor:
        index_of = {executor.submit(func, arg): i for i, arg in enumerate(args)}
        pending = set(index_of)
        progress = tqdm(total=len(args), desc=desc, disable=not bar)
        try:
            while pending:
                done, pending = wait(pending, timeout=timeout, return_when=FIRST_COMPLETED)
                if not done:
                    raise TimeoutError
                for future in done:
                    i = index_of[future]
                    exc = future.exception()
                    if exc is not None:
                        _report_failure(args[i], exc, verbose_errors)
                        failed.add(i)
                    elif return_value:
                        results[i] = future.result()
                    progress.update(1)
        except TimeoutError:
            print(f"\n{len(pending)} calls still running after {timeout}s; giving up on them",
                  file=sys.stderr)
            failed.update(index_of[future] for future in pending)
            for future in pending:
                future.cancel()
        except KeyboardInterrupt:
            print("\nKeyboardInterrupt caught, canceling remaining operations...", file=sys.stderr)
            for future in pending:
                future.cancel()
            raise
        finally:
            progress.close()

    return results, sorted(failed)
