"""File system utilities."""

import csv
import json
import os
import pathlib
import shutil
import tempfile
from contextlib import contextmanager
from typing import Any, Iterable, Iterator, List, Sequence

import numpy as np


def ensure_dir(path: str) -> None:
    """确保目录存在，如不存在则创建"""
    pathlib.Path(path).mkdir(parents=True, exist_ok=True)


def format_float(value: float) -> str:
    """最短往返十进制表示"""
    return repr(float(value))


def _format_cell(value: Any) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, (bool, int, np.integer)):
        return str(value)
    try:
        return format_float(value)
    except (TypeError, ValueError):
        return str(value)


def write_csv(path: str, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> None:
    """写 CSV（浮点数按最短往返格式）"""
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_format_cell(v) for v in row])


def write_json(path: str, data: Any) -> None:
    """写 JSON（键排序，保证字节级可复现）"""
    with open(path, "w", encoding="utf-8") as f:
        json.dump(data, f, ensure_ascii=False, indent=2, sort_keys=True)
        f.write("\n")


@contextmanager
def atomic_file(path: str) -> Iterator[str]:
    """
    原子写单个文件：先写到同目录临时文件，成功后 os.replace

    Yields:
        临时文件路径
    """
    target_dir = os.path.dirname(os.path.abspath(path))
    ensure_dir(target_dir)
    fd, tmp_path = tempfile.mkstemp(prefix=".tmp-", dir=target_dir)
    os.close(fd)
    try:
        yield tmp_path
        os.replace(tmp_path, path)
    finally:
        if os.path.exists(tmp_path):
            os.remove(tmp_path)


@contextmanager
def atomic_directory(path: str) -> Iterator[str]:
    """
    原子写目录：在同级临时目录中构建，成功后整体改名

    目标目录已存在时会被替换。失败时不留下任何部分输出。
    """
    parent = os.path.dirname(os.path.abspath(path))
    ensure_dir(parent)
    tmp_dir = tempfile.mkdtemp(prefix=".tmp-", dir=parent)
    try:
        yield tmp_dir
        if os.path.exists(path):
            shutil.rmtree(path)
        os.replace(tmp_dir, path)
    finally:
        if os.path.exists(tmp_dir):
            shutil.rmtree(tmp_dir, ignore_errors=True)


@contextmanager
def atomic_files(*paths: str) -> Iterator[List[str]]:
    """
    原子写一组同目录文件：全部写入同一个临时目录，全部成功后才逐个改名到目标位置

    任一文件写入失败时，目标位置不出现任何一个文件。

    Yields:
        与 paths 一一对应的临时文件路径
    """
    parents = {os.path.dirname(os.path.abspath(p)) for p in paths}
    if len(parents) != 1:
        raise ValueError("atomic_files expects paths in a single directory")
    parent = parents.pop()
    ensure_dir(parent)
    stage = tempfile.mkdtemp(prefix=".tmp-", dir=parent)
    staged = [os.path.join(stage, os.path.basename(p)) for p in paths]
    try:
        yield staged
        for tmp, path in zip(staged, paths):
            os.replace(tmp, path)
    finally:
        shutil.rmtree(stage, ignore_errors=True)
