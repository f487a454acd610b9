import logging
import logging.config
import sys
import time
import traceback
import uuid
from datetime import datetime, timezone
from pathlib import Path
from typing import Dict, Any, Optional
from contextvars import ContextVar
from contextlib import contextmanager
import functools

# Context Variable für Run-ID Tracking
run_id_context: ContextVar[str] = ContextVar('run_id', default='')

# Separater Logger für Stufenzeiten (performance.log)
performance_logger = logging.getLogger("performance")


class RunIdFilter(logging.Filter):
    """
    Filter zur Anreicherung der Log-Nachrichten mit Run-IDs.
    Fügt jedem Log-Eintrag die ID des aktuellen Pipeline-Laufs hinzu.
    """

    def filter(self, record):
        record.run_id = run_id_context.get('')
        return True


@contextmanager
def run_context(run_id: Optional[str] = None):
    """
    Kontext-Manager für das Lauf-Tracking.

    Erzeugt eine neue Run-ID (oder übernimmt die angegebene) und stellt
    diese im aktuellen Kontext zur Verfügung.

    Beispiel:
        with run_context():
            logger.info("Starte Community-Erkennung")
    """
    token = run_id_context.set(run_id or uuid.uuid4().hex[:12])
    try:
        yield run_id_context.get()
    finally:
        run_id_context.reset(token)


@contextmanager
def log_execution_time(
    logger: logging.Logger,
    operation_name: str,
    timings: Optional[Dict[str, float]] = None
):
    """
    Kontext-Manager zum Tracking der Ausführungszeit von Operationen.

    Args:
        logger: Der Logger für die Zeiterfassung
        operation_name: Name/Beschreibung der Operation
        timings: Optionales Dictionary, in das die Dauer in ms unter
            operation_name eingetragen wird

    Beispiel:
        timings = {}
        with log_execution_time(logger, "stage1", timings):
            score_concepts()
        timings["stage1"]  # Millisekunden
    """
    start_time = time.perf_counter()
    try:
        yield
    finally:
        execution_time = (time.perf_counter() - start_time) * 1000
        if timings is not None:
            timings[operation_name] = execution_time
        logger.debug(
            f"{operation_name} ausgeführt",
            extra={
                "execution_time": execution_time,
                "operation": operation_name
            }
        )
        performance_logger.debug(
            operation_name,
            extra={
                "execution_time": execution_time,
                "operation": operation_name
            }
        )


def log_error_with_context(
    logger: logging.Logger,
    error: Exception,
    context: Dict[str, Any],
    message: str = "Ein Fehler ist aufgetreten"
) -> None:
    """
    Erweiterte Fehlerprotokollierung mit zusätzlichem Kontext und Stacktrace.

    Args:
        logger: Logger-Instanz für die Protokollierung
        error: Die aufgetretene Exception
        context: Dictionary mit zusätzlichen Kontextinformationen
        message: Optionale Fehlermeldung

    Beispiel:
        try:
            graph = parse_gml(text)
        except GraphParseError as e:
            log_error_with_context(logger, e, {'path': str(path)})
    """
    error_info = {
        'error_type': type(error).__name__,
        'error_message': str(error),
        'context': context,
        'timestamp': datetime.now(timezone.utc).isoformat()
    }

    logger.error(
        f"{message}: {error_info['error_type']} - {error_info['error_message']}",
        extra={
            'error_details': error_info,
            'stack_trace': traceback.format_exc()
        }
    )


def setup_logging(
    debug: bool = False,
    log_dir: Optional[str] = "logs",
    enable_performance_logging: bool = True,
    log_level: str = "INFO",
    colored_console: bool = True,
    max_file_size: int = 10485760,
    backup_count: int = 5
) -> None:
    """
    Hauptfunktion zur Konfiguration des Logging-Systems.

    Die Konsole schreibt nach stderr, damit stdout für JSON/CSV-Ausgaben
    der CLI frei bleibt.

    Args:
        debug: Aktiviert detailliertere Logging-Ausgaben
        log_dir: Basisverzeichnis für Log-Dateien (None = nur Konsole)
        enable_performance_logging: Aktiviert separates Performance-Logging
        log_level: Level der Konsolenausgabe
        colored_console: coloredlogs-Formatter für die Konsole verwenden
        max_file_size: Maximale Größe einer Log-Datei in Bytes
        backup_count: Anzahl rotierter Dateien
    """
    console_level = "DEBUG" if debug else log_level.upper()

    console_formatter: Dict[str, Any] = {
        "format": "%(asctime)s [%(levelname)s] %(name)s - %(message)s",
        "datefmt": "%H:%M:%S"
    }
    if colored_console:
        console_formatter = {
            "()": "coloredlogs.ColoredFormatter",
            "fmt": "%(asctime)s [%(levelname)s] %(name)s - %(message)s",
            "datefmt": "%H:%M:%S"
        }

    config: Dict[str, Any] = {
        "version": 1,
        "disable_existing_loggers": False,

        "formatters": {
            "detailed": {
                "format": "%(asctime)s [%(levelname)8s] [%(run_id)s] %(name)s - %(message)s (%(filename)s:%(lineno)s)",
                "datefmt": "%Y-%m-%d %H:%M:%S"
            },
            "console": console_formatter,
            "performance": {
                "format": "%(asctime)s [PERFORMANCE] [%(run_id)s] %(operation)s - Zeit: %(execution_time).2fms"
            }
        },

        "filters": {
            "run_id": {
                "()": RunIdFilter
            }
        },

        "handlers": {
            "console": {
                "class": "logging.StreamHandler",
                "level": console_level,
                "formatter": "console",
                "stream": sys.stderr,
                "filters": ["run_id"]
            }
        },

        "loggers": {
            "": {  # Root Logger
                "handlers": ["console"],
                "level": "DEBUG" if debug else console_level,
                "propagate": True
            }
        }
    }

    if log_dir:
        logs_dir = Path(log_dir)
        date_dir = logs_dir / datetime.now().strftime("%Y-%m")
        date_dir.mkdir(parents=True, exist_ok=True)

        config["handlers"]["file"] = {
            "class": "logging.handlers.RotatingFileHandler",
            "level": "INFO",
            "formatter": "detailed",
            "filename": str(date_dir / "coin.log"),
            "maxBytes": max_file_size,
            "backupCount": backup_count,
            "encoding": "utf-8",
            "filters": ["run_id"]
        }
        config["handlers"]["error_file"] = {
            "class": "logging.handlers.RotatingFileHandler",
            "level": "ERROR",
            "formatter": "detailed",
            "filename": str(date_dir / "error.log"),
            "maxBytes": max_file_size,
            "backupCount": backup_count,
            "encoding": "utf-8",
            "filters": ["run_id"]
        }
        config["loggers"][""]["handlers"] += ["file", "error_file"]

        # Performance-Logging hinzufügen wenn aktiviert
        if enable_performance_logging:
            config["handlers"]["performance_file"] = {
                "class": "logging.handlers.RotatingFileHandler",
                "level": "DEBUG",
                "formatter": "performance",
                "filename": str(date_dir / "performance.log"),
                "maxBytes": max_file_size,
                "backupCount": 3,
                "encoding": "utf-8",
                "filters": ["run_id"]
            }
            config["loggers"]["performance"] = {
                "handlers": ["performance_file"],
                "level": "DEBUG",
                "propagate": False
            }

    logging.config.dictConfig(config)


def get_logger(name: str) -> logging.Logger:
    """
    Erstellt oder holt einen benannten Logger.

    Args:
        name: Name des Loggers, üblicherweise der Modulname (__name__)

    Returns:
        Konfigurierter Logger für das angegebene Modul
    """
    return logging.getLogger(name)


def log_function_call(logger: logging.Logger):
    """
    Decorator für das Logging von Funktionsaufrufen.

    Protokolliert Start, Ende, Dauer und eventuelle Fehler eines Aufrufs.
    Die Argumente werden nicht mitgeschrieben (Graphen können groß sein).

    Beispiel:
        @log_function_call(get_logger(__name__))
        def maximal_cliques(graph):
            ...
    """
    def decorator(func):
        @functools.wraps(func)
        def wrapper(*args, **kwargs):
            func_name = func.__name__
            logger.debug(f"Starte Funktion: {func_name}")
            try:
                with log_execution_time(logger, func_name):
                    result = func(*args, **kwargs)
                logger.debug(f"Funktion {func_name} erfolgreich beendet")
                return result
            except Exception as e:
                log_error_with_context(
                    logger,
                    e,
                    {'function': func_name}
                )
                raise
        return wrapper
    return decorator
