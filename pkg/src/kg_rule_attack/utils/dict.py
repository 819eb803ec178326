"""Shared utils for dealing with dictionaries.
"""


def deep_merge(dest, source, overwrite_duplicate_keys=False, _path=None):
    """Deep merges source dictionary into destination dictionary.

    Parameters
    ----------
    dest : dict
        Destination dictionary, modified in place.
    source : dict
        Source dictionary to merge into dest.
    overwrite_duplicate_keys : bool
        True to let source leaves replace differing dest leaves.
        False to raise ValueError on differing leaves.

    Returns
    -------
    dict
        The given dest.

    Raises
    ------
    ValueError
        If a leaf is set to different values in source and dest and
        overwrite_duplicate_keys is False. The message names the dotted key path.

    Examples
    --------
    >>> deep_merge({'miner': {'exhaustive': True}}, {'miner': {'top-k-per-head': 5}})
    {'miner': {'exhaustive': True, 'top-k-per-head': 5}}
    """
    path = _path or []

    for key, source_value in source.items():
        if key not in dest:
            dest[key] = source_value
            continue

        dest_value = dest[key]
        if isinstance(dest_value, dict) and isinstance(source_value, dict):
            deep_merge(
                dest=dest_value,
                source=source_value,
                overwrite_duplicate_keys=overwrite_duplicate_keys,
                _path=path + [str(key)]
            )
        elif dest_value != source_value:
            if not overwrite_duplicate_keys:
                raise ValueError(f"Conflict at {'.'.join(path + [str(key)])}")
            dest[key] = source_value

    return dest
