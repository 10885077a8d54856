import os

import click
from flask import Flask
from flask.cli import FlaskGroup

from macrodiversity_mrc import create_app, DEFAULT_CONFIG_MODULE_CLASS
from macrodiversity_mrc.version import __version__


def _create_app() -> Flask:
    return create_app(config_module_class=os.getenv('MRC_CONFIG_MODULE_CLASS') or DEFAULT_CONFIG_MODULE_CLASS)


@click.group(cls=FlaskGroup, create_app=_create_app, add_default_commands=False, add_version_option=False,
             load_dotenv=False)
@click.version_option(__version__, prog_name='macro-mrc')
def main() -> None:
    """Symbol error rates, floors and outage for MRC macrodiversity receivers."""


if __name__ == '__main__':
    main()
