from django.apps import AppConfig
import logging


class AsaiAppConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'asai_app'
    verbose_name = 'Asai-cube local factors'

    def ready(self):
        """Инициализация при запуске приложения"""
        from django.conf import settings

        logger = logging.getLogger(__name__)
        engine = getattr(settings, 'ASAI', {})
        logger.debug(
            f"Asai engine ready: default p={engine.get('DEFAULT_PRIME')}, "
            f"cache={'on' if engine.get('CACHE_ENABLED') else 'off'}"
        )
