"""Bundled data files: default lexicon, phrase set, and Dolch word lists."""

from importlib import resources


def _path(name: str):
    return resources.files(__package__) / name


def default_lexicon_path():
    return _path("lexicon.tsv")


def default_phrase_set_path():
    return _path("phrases.txt")


def dolch_nonnouns_path():
    return _path("dolch_nonnouns.txt")


def dolch_nouns_path():
    return _path("dolch_nouns.txt")
