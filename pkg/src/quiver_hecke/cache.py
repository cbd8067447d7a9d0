"""JSON persistence for reports and module dumps."""

import json
from pathlib import Path
from typing import Any, Callable, Optional


def load_json(path: Path) -> Optional[Any]:
    """
    Load a JSON file if it exists.

    Args:
        path: Path to JSON file

    Returns:
        Loaded JSON data, or None if the file doesn't exist
    """
    if not path.exists():
        return None
    with open(path, "r", encoding="utf-8") as f:
        return json.load(f)


def save_json(path: Path, data: Any) -> None:
    """
    Save data as sorted, indented JSON; rationals and other exact values become strings.

    Args:
        path: Path to save JSON file
        data: Data to serialize
    """
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        json.dump(data, f, indent=2, ensure_ascii=False, sort_keys=True, default=str)


def with_cache(
    cache_path: Path,
    compute_fn: Callable[[], Any],
    force: bool = False,
) -> Any:
    """
    Return the cached JSON at cache_path, computing and saving it on a miss.

    Args:
        cache_path: Path to cache file
        compute_fn: Function producing JSON-serializable data
        force: If True, recompute even when the cache exists

    Returns:
        Cached or freshly computed data
    """
    if not force:
        cached = load_json(cache_path)
        if cached is not None:
            return cached
    data = compute_fn()
    save_json(cache_path, data)
    return data


def save_module(path: Path, module) -> None:
    """Dump a GradedModule (basis metadata and sparse actions) to JSON."""
    save_json(path, module.to_dict())


def load_module(path: Path, algebra):
    """
    Load a GradedModule dumped by save_module over the given algebra.

    Raises:
        FileNotFoundError: if path does not exist
    """
    from quiver_hecke.gmod import GradedModule

    data = load_json(path)
    if data is None:
        raise FileNotFoundError(path)
    return GradedModule.from_dict(algebra, data)
