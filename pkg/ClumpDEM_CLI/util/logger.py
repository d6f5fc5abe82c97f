import logging
from pathlib import Path

from rich.logging import RichHandler

LOG_NAME = 'clumpdem'
LOG_FILE = 'clumpdem.log'


def setup_logger(level: str = 'INFO', log_dir: str = 'logs', console: bool = True) -> logging.Logger:
    '''
    rich console handler plus a plain file handler under log_dir;
    calling it again only updates the level
    '''
    logger = logging.getLogger(LOG_NAME)
    logger.setLevel(level.upper())
    if getattr(logger, '_clumpdem_configured', False):
        return logger
    if console:
        logger.addHandler(RichHandler(show_path=False, markup=False, rich_tracebacks=True))
    if log_dir:
        Path(log_dir).mkdir(parents=True, exist_ok=True)
        handler = logging.FileHandler(Path(log_dir) / LOG_FILE, mode='a', encoding='utf-8')
        handler.setFormatter(logging.Formatter('%(asctime)s %(levelname)s %(name)s: %(message)s'))
        logger.addHandler(handler)
    logger.propagate = False
    logger._clumpdem_configured = True
    return logger
